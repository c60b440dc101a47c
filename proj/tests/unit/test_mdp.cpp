#include "bwmdp/errors.hpp"
#include "bwmdp/generators.hpp"
#include "bwmdp/mdp.hpp"

#include <doctest.h>

using namespace bwmdp;

namespace {

MDPInstance two_state() {
    MDPInstance M;
    M.n_states = 2;
    M.n_actions = 2;
    M.rewards = {{Rational(1), Rational(1, 2)}, {Rational(0), Rational(-3, 4)}};
    M.transitions = {
        {{Rational(1, 2), Rational(1, 2)}, {Rational(1), Rational(0)}},
        {{Rational(0), Rational(1)}, {Rational(1, 4), Rational(3, 4)}},
    };
    return M;
}

} // namespace

TEST_CASE("validate fills m and r_inf") {
    MDPInstance M = two_state();
    validate(M);
    CHECK(M.m == 4);           // lcm of denominators 1, 2, 4 over rewards and rows
    CHECK(M.r_inf == 4);       // max |4 * reward| = |4 * 1| = 4
}

TEST_CASE("validate honours a declared common denominator") {
    MDPInstance M = two_state();
    M.m_declared = Integer(8); // any multiple of the derived lcm is accepted
    validate(M);
    CHECK(M.m == 8);
    CHECK(M.r_inf == 8);

    MDPInstance bad = two_state();
    bad.m_declared = Integer(6); // not a multiple of 4
    CHECK_THROWS_AS(validate(bad), ValidationError);
    MDPInstance zero = two_state();
    zero.m_declared = Integer(0);
    CHECK_THROWS_AS(validate(zero), ValidationError);
}

TEST_CASE("validate rejects malformed instances") {
    MDPInstance M = two_state();
    M.transitions[0][0][0] = Rational(1, 3); // row no longer sums to one
    CHECK_THROWS_AS(validate(M), ValidationError);

    MDPInstance neg = two_state();
    neg.transitions[1][1][0] = Rational(-1, 4);
    neg.transitions[1][1][1] = Rational(5, 4);
    CHECK_THROWS_AS(validate(neg), ValidationError);

    MDPInstance shape = two_state();
    shape.rewards[1].pop_back();
    CHECK_THROWS_AS(validate(shape), ValidationError);

    MDPInstance len = two_state();
    len.transitions[0][1].push_back(Rational(0));
    CHECK_THROWS_AS(validate(len), ValidationError);

    MDPInstance empty;
    CHECK_THROWS_AS(validate(empty), ValidationError);
}

TEST_CASE("validate checks uncertainty radii against m") {
    MDPInstance M = two_state();
    UncertaintySet U;
    U.norm = BallNorm::Linf;
    U.radii = {{Rational(1, 4), Rational(0)}, {Rational(1, 2), Rational(3, 4)}};
    M.uncertainty = U;
    validate(M); // all radii are multiples of 1/4
    CHECK(M.m == 4);

    M.uncertainty->radii[0][0] = Rational(1, 3); // not a multiple of 1/4
    CHECK_THROWS_AS(validate(M), ValidationError);

    M.uncertainty->radii[0][0] = Rational(-1, 4);
    CHECK_THROWS_AS(validate(M), ValidationError);

    M.uncertainty->radii[0].pop_back();
    CHECK_THROWS_AS(validate(M), ValidationError);
}

TEST_CASE("induced reward and kernel pick policy rows") {
    MDPInstance M = two_state();
    validate(M);
    Policy pi{1, 0};
    RationalVector r = induced_reward(M, pi);
    CHECK(r[0] == Rational(1, 2));
    CHECK(r[1] == 0);
    RationalMatrix P = induced_kernel(M, pi);
    CHECK(P[0][0] == 1);
    CHECK(P[0][1] == 0);
    CHECK(P[1][1] == 1);

    CHECK_THROWS_AS(induced_reward(M, Policy{0}), ValidationError);
    CHECK_THROWS_AS(induced_kernel(M, Policy{0, 5}), ValidationError);
}

TEST_CASE("effective actions collapse duplicate columns") {
    MDPInstance M = two_state();
    // make action 1 at state 1 an exact copy of action 0
    M.rewards[1][1] = M.rewards[1][0];
    M.transitions[1][1] = M.transitions[1][0];
    validate(M);
    auto menus = effective_actions(M);
    CHECK(menus[0] == std::vector<int>{0, 1});
    CHECK(menus[1] == std::vector<int>{0});
    CHECK(effective_policy_count(M) == 2);
    auto pols = enumerate_policies(M);
    REQUIRE(pols.size() == 2);
    CHECK(pols[0] == Policy{0, 0});
    CHECK(pols[1] == Policy{1, 0});
}

TEST_CASE("enumerate_policies respects the guard") {
    MDPInstance M = two_state();
    validate(M);
    CHECK(enumerate_policies(M).size() == 4);
    CHECK_THROWS_AS(enumerate_policies(M, Integer(3)), SpaceTooLarge);
}

TEST_CASE("policy enumeration on the eight-state example") {
    MDPInstance M = example_one();
    CHECK(M.m == 9);
    CHECK(M.r_inf == 72);
    CHECK(effective_policy_count(M) == 3); // only state 0 has a real choice
    auto pols = enumerate_policies(M);
    REQUIRE(pols.size() == 3);
    for (int a = 0; a < 3; ++a) CHECK(pols[static_cast<std::size_t>(a)][0] == a);
}

TEST_CASE("policy_label is stable") {
    CHECK(policy_label(Policy{0, 2, 1}) == "pi[0 2 1]");
}

TEST_CASE("instances_equal compares data and uncertainty") {
    MDPInstance A = two_state();
    MDPInstance B = two_state();
    validate(A);
    validate(B);
    CHECK(instances_equal(A, B));
    B.rewards[0][0] = Rational(2);
    CHECK_FALSE(instances_equal(A, B));

    MDPInstance C = two_state();
    UncertaintySet U;
    U.norm = BallNorm::L1;
    U.radii = {{Rational(1, 4), Rational(0)}, {Rational(0), Rational(0)}};
    C.uncertainty = U;
    validate(C);
    CHECK_FALSE(instances_equal(A, C));
    MDPInstance D = two_state();
    D.uncertainty = U;
    validate(D);
    CHECK(instances_equal(C, D));
    D.uncertainty->norm = BallNorm::Linf;
    CHECK_FALSE(instances_equal(C, D));
}
