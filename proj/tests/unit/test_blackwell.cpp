#include "bwmdp/blackwell.hpp"
#include "bwmdp/errors.hpp"
#include "bwmdp/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace bwmdp;

namespace {

Policy with_first_action(const MDPInstance& M, int a) {
    Policy pi(static_cast<std::size_t>(M.n_states), 0);
    pi[0] = a;
    return pi;
}

/// Two-action instance whose value gap at state 0 is (1/5 - g + g^2) times
/// a positive factor, so the crossings are the irrational (5 +- sqrt(5))/10.
MDPInstance irrational_crossings() {
    MDPInstance M;
    M.n_states = 4;
    M.n_actions = 2;
    Rational z(0), one(1);
    M.rewards = {{one, Rational(6, 5)}, {Rational(-1), Rational(-1)}, {one, one}, {z, z}};
    auto row_to = [&](int t) {
        std::vector<Rational> row(4, z);
        row[static_cast<std::size_t>(t)] = one;
        return row;
    };
    M.transitions = {
        {row_to(3), row_to(1)}, // bank 1 and stop, or enter the chain
        {row_to(2), row_to(2)},
        {row_to(3), row_to(3)},
        {row_to(3), row_to(3)},
    };
    validate(M);
    return M;
}

} // namespace

TEST_CASE("closed-form separation data on small instances") {
    MDPInstance one_state;
    one_state.n_states = 1;
    one_state.n_actions = 1;
    one_state.rewards = {{Rational(1)}};
    one_state.transitions = {{{Rational(1)}}};
    validate(one_state);
    EtaBound b1 = eta_bound(one_state);
    CHECK(b1.N == 1);
    CHECK(b1.L == 8); // 2 * 1 * 1 * 1^2 * 4
    CHECK(b1.eta == Rational(1, 18));
    CHECK(b1.threshold == Rational(17, 18));

    MDPInstance two;
    two.n_states = 2;
    two.n_actions = 1;
    two.rewards = {{Rational(2)}, {Rational(0)}};
    two.transitions = {{{Rational(1, 2), Rational(1, 2)}}, {{Rational(0), Rational(1)}}};
    validate(two);
    CHECK(two.m == 2);
    CHECK(two.r_inf == 4);
    EtaBound b2 = eta_bound(two);
    CHECK(b2.N == 3);
    CHECK(b2.L == 4096); // 2 * 2 * 4 * 2^4 * 4^2
    CHECK(b2.eta == Rational(Integer(1), Integer("6464363143262")));
    CHECK(b2.eta == rump_eta(b2.N, b2.L));
}

TEST_CASE("separation data on the eight-state example") {
    MDPInstance M = example_one();
    EtaBound b = eta_bound(M);
    CHECK(b.N == 15);
    CHECK(b.L == Integer("139898339823276578045952")); // 2*8*72 * 9^16 * 4^8
    CHECK(b.eta == rump_eta(15, b.L));
    CHECK(b.eta.get_num() == 1);
    CHECK(b.eta.get_den().get_str().size() == 359);
    CHECK(b.threshold == Rational(1) - b.eta);
}

TEST_CASE("pairwise crossing points") {
    MDPInstance M = example_one();
    Policy a0 = with_first_action(M, 0), a1 = with_first_action(M, 1), a2 = with_first_action(M, 2);
    AlgebraicNumber g01 = gamma_pair(M, a0, a1, 0);
    CHECK(g01.is_exact());
    CHECK(g01.value() == Rational(1, 2));
    CHECK(gamma_pair(M, a0, a2, 0).value() == Rational(3, 4));
    CHECK(gamma_pair(M, a1, a2, 0).value() == Rational(15, 28));
    // other states see identical continuations: identically zero difference
    CHECK(gamma_pair(M, a0, a1, 5).value() == 0);
    CHECK(gamma_pair(M, a0, a0, 0).value() == 0);
}

TEST_CASE("gamma_bar is the max crossing") {
    MDPInstance M = example_one();
    AlgebraicNumber g = gamma_bar(M);
    CHECK(g.is_exact());
    CHECK(g.value() == Rational(3, 4));
}

TEST_CASE("full landscape of the eight-state example") {
    MDPInstance M = example_one();
    BlackwellAnalysis A = exact_blackwell_analysis(M);
    REQUIRE(A.policies.size() == 3);

    REQUIRE(A.breakpoints.size() == 5);
    const Rational expected_bps[] = {Rational(0), Rational(1, 4), Rational(1, 2),
                                     Rational(15, 28), Rational(3, 4)};
    for (std::size_t i = 0; i < 5; ++i) {
        REQUIRE(A.breakpoints[i].is_exact());
        CHECK(A.breakpoints[i].value() == expected_bps[i]);
    }

    // five open intervals since 0 is itself a breakpoint
    REQUIRE(A.interval_sets.size() == 5);
    const int interval_action[] = {0, 1, 0, 0, 0};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(A.interval_sets[i].actions_per_state[0] ==
              std::vector<int>{interval_action[i]});

    REQUIRE(A.breakpoint_sets.size() == 5);
    CHECK(A.breakpoint_sets[0].actions_per_state[0] == std::vector<int>{0});
    CHECK(A.breakpoint_sets[1].actions_per_state[0] == std::vector<int>{0, 1});
    CHECK(A.breakpoint_sets[2].actions_per_state[0] == std::vector<int>{0, 1});
    CHECK(A.breakpoint_sets[3].actions_per_state[0] == std::vector<int>{0});
    CHECK(A.breakpoint_sets[4].actions_per_state[0] == std::vector<int>{0, 2});

    CHECK(A.gamma_bar.is_exact());
    CHECK(A.gamma_bar.value() == Rational(3, 4));
    CHECK(A.gamma_bw.is_exact());
    CHECK(A.gamma_bw.value() == Rational(3, 4));
    REQUIRE(A.blackwell_set.size() == 1);
    CHECK(A.blackwell_set[0] == with_first_action(M, 0));
    CHECK(A.blackwell_product.contains(with_first_action(M, 0)));
    CHECK(A.blackwell_product.count() == 1);
}

TEST_CASE("landscape of the alternating five-chain") {
    std::vector<Rational> bps{Rational(0), Rational(1, 5), Rational(2, 5), Rational(3, 5),
                              Rational(4, 5), Rational(1)};
    MDPInstance M = interval_instance(bps);
    CHECK(M.n_states == 6);
    CHECK(M.m == 240);
    const Rational expected_r[] = {Rational(9, 10), Rational(25, 24), Rational(-175, 48),
                                   Rational(125, 24), Rational(-125, 48)};
    // r[0] sits on action 1 of state 0, the rest along the chain
    CHECK(M.rewards[0][1] == expected_r[0]);
    for (std::size_t t = 1; t < 5; ++t) CHECK(M.rewards[t][0] == expected_r[t]);

    BlackwellAnalysis A = exact_blackwell_analysis(M);
    REQUIRE(A.breakpoints.size() == 4);
    for (int k = 1; k <= 4; ++k) {
        REQUIRE(A.breakpoints[static_cast<std::size_t>(k - 1)].is_exact());
        CHECK(A.breakpoints[static_cast<std::size_t>(k - 1)].value() == Rational(k, 5));
    }
    REQUIRE(A.interval_sets.size() == 5);
    const int interval_action[] = {0, 1, 0, 1, 0};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(A.interval_sets[i].actions_per_state[0] ==
              std::vector<int>{interval_action[i]});
    CHECK(A.gamma_bw.is_exact());
    CHECK(A.gamma_bw.value() == Rational(4, 5));
    REQUIRE(A.blackwell_set.size() == 1);
    CHECK(A.blackwell_set[0][0] == 0);
}

TEST_CASE("irrational crossings carry interval certificates") {
    MDPInstance M = irrational_crossings();
    CHECK(M.m == 5);
    BlackwellAnalysis A = exact_blackwell_analysis(M);

    REQUIRE(A.breakpoints.size() == 2);
    const double lo_root = (5.0 - std::sqrt(5.0)) / 10.0;
    const double hi_root = (5.0 + std::sqrt(5.0)) / 10.0;
    CHECK_FALSE(A.breakpoints[0].is_exact());
    CHECK_FALSE(A.breakpoints[1].is_exact());
    // breakpoint certificates are isolating but not pre-narrowed; refine to taste
    const Rational narrow(Integer(1), Integer(1) << 40);
    A.breakpoints[0].refine_below(narrow);
    A.breakpoints[1].refine_below(narrow);
    CHECK(std::fabs(A.breakpoints[0].approx() - lo_root) < 1e-9);
    CHECK(std::fabs(A.breakpoints[1].approx() - hi_root) < 1e-9);

    REQUIRE(A.interval_sets.size() == 3);
    CHECK(A.interval_sets[0].actions_per_state[0] == std::vector<int>{1});
    CHECK(A.interval_sets[1].actions_per_state[0] == std::vector<int>{0});
    CHECK(A.interval_sets[2].actions_per_state[0] == std::vector<int>{1});
    // at both touch points the two actions tie
    CHECK(A.breakpoint_sets[0].actions_per_state[0] == std::vector<int>{0, 1});
    CHECK(A.breakpoint_sets[1].actions_per_state[0] == std::vector<int>{0, 1});

    CHECK_FALSE(A.gamma_bw.is_exact());
    CHECK(std::fabs(A.gamma_bw.approx() - hi_root) < 1e-9);
    // the certificate pins the number as a root of 5x^2 - 5x + 1
    IntPoly witness(std::vector<Integer>{Integer(1), Integer(-5), Integer(5)});
    CHECK(A.gamma_bw.vanishes(witness));
    CHECK(A.gamma_bw.compare_to_rational(Rational(7, 10)) > 0);
    CHECK(A.gamma_bw.compare_to_rational(Rational(3, 4)) < 0);

    // default certificate width is below 2^-64
    Rational w(1);
    for (int i = 0; i < 64; ++i) w /= 2;
    CHECK(A.gamma_bw.hi() - A.gamma_bw.lo() < w);

    AnalysisOptions opts;
    opts.certificate_width = Rational(1, 1000);
    BlackwellAnalysis B = exact_blackwell_analysis(M, opts);
    CHECK(B.gamma_bw.hi() - B.gamma_bw.lo() < Rational(1, 1000));
    CHECK(AlgebraicNumber::compare(A.gamma_bw, B.gamma_bw) == 0);

    REQUIRE(A.blackwell_set.size() == 1);
    CHECK(A.blackwell_set[0][0] == 1);
}

TEST_CASE("degenerate landscape with a single policy") {
    MDPInstance M;
    M.n_states = 2;
    M.n_actions = 1;
    M.rewards = {{Rational(1)}, {Rational(0)}};
    M.transitions = {{{Rational(1, 2), Rational(1, 2)}}, {{Rational(0), Rational(1)}}};
    validate(M);
    BlackwellAnalysis A = exact_blackwell_analysis(M);
    CHECK(A.breakpoints.empty());
    REQUIRE(A.interval_sets.size() == 1);
    CHECK(A.gamma_bw.is_exact());
    CHECK(A.gamma_bw.value() == 0);
    CHECK(A.gamma_bar.value() == 0);
    REQUIRE(A.blackwell_set.size() == 1);
}

TEST_CASE("policy guard trips on demand") {
    MDPInstance M = example_one();
    AnalysisOptions opts;
    opts.policy_guard = Integer(2);
    CHECK_THROWS_AS(exact_blackwell_analysis(M, opts), SpaceTooLarge);
    CHECK_THROWS_AS(gamma_bar(M, opts), SpaceTooLarge);
}

TEST_CASE("reduction to a single discounted solve agrees with the landscape") {
    for (MDPInstance M : {example_one(), irrational_crossings()}) {
        BlackwellAnalysis A = exact_blackwell_analysis(M);
        BlackwellPolicyResult ex = blackwell_optimal_policy(M, BlackwellMethod::Exact);
        CHECK(A.blackwell_product.contains(ex.policy));
        BlackwellPolicyResult red = blackwell_optimal_policy(M, BlackwellMethod::Reduction);
        REQUIRE(red.gamma_used.has_value());
        CHECK(*red.gamma_used == eta_bound(M).threshold);
        CHECK(A.blackwell_product.contains(red.policy));
    }
}
