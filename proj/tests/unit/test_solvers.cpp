#include "bwmdp/errors.hpp"
#include "bwmdp/generators.hpp"
#include "bwmdp/solvers.hpp"

#include <doctest.h>

#include <cmath>

using namespace bwmdp;

namespace {

Policy with_first_action(const MDPInstance& M, int a) {
    Policy pi(static_cast<std::size_t>(M.n_states), 0);
    pi[0] = a;
    return pi;
}

} // namespace

TEST_CASE("policy set product basics") {
    PolicySetProduct S;
    S.actions_per_state = {{0, 2}, {1}};
    CHECK(S.count() == 2);
    CHECK(S.contains(Policy{0, 1}));
    CHECK(S.contains(Policy{2, 1}));
    CHECK_FALSE(S.contains(Policy{1, 1}));
    CHECK_FALSE(S.contains(Policy{0, 0}));
    CHECK(S.min_policy() == Policy{0, 1});
    auto all = S.expand();
    REQUIRE(all.size() == 2);
    CHECK(all[0] == Policy{0, 1});
    CHECK(all[1] == Policy{2, 1});
    CHECK_THROWS_AS(S.expand(Integer(1)), SpaceTooLarge);
}

TEST_CASE("exact_policy_evaluation solves the induced chain") {
    MDPInstance M = example_one();
    Rational g(1, 2);
    RationalVector v = exact_policy_evaluation(M, with_first_action(M, 1), g);
    CHECK(v[0] == 1);        // 6g - 8g^2 at 1/2
    CHECK(v[1] == 2);        // 6 - 8g
    CHECK(v[2] == -8);
    CHECK(v[7] == 0);
    CHECK_THROWS_AS(exact_policy_evaluation(M, with_first_action(M, 0), Rational(1)),
                    GammaOutOfRange);
    CHECK_THROWS_AS(exact_policy_evaluation(M, with_first_action(M, 0), Rational(-1, 10)),
                    GammaOutOfRange);
}

TEST_CASE("exact_policy_evaluation closed form on a lazy chain") {
    MDPInstance M;
    M.n_states = 2;
    M.n_actions = 1;
    M.rewards = {{Rational(1)}, {Rational(0)}};
    M.transitions = {{{Rational(1, 2), Rational(1, 2)}}, {{Rational(0), Rational(1)}}};
    validate(M);
    for (long num : {1, 3, 9}) {
        Rational g(num, 10);
        RationalVector v = exact_policy_evaluation(M, Policy{0, 0}, g);
        CHECK(v[0] == Rational(2) / (Rational(2) - g)); // 1 / (1 - g/2)
        CHECK(v[1] == 0);
    }
}

TEST_CASE("exact_policy_iteration finds the optimum across discount factors") {
    MDPInstance M = example_one();
    struct Expect {
        Rational gamma;
        int best_action;
        Rational value;
    };
    for (const Expect& e : {
             Expect{Rational(0), 0, Rational(1)},
             Expect{Rational(1, 10), 0, Rational(1)},
             Expect{Rational(3, 8), 1, Rational(9, 8)}, // 6g - 8g^2 at 3/8
             Expect{Rational(9, 10), 0, Rational(1)},
         }) {
        ExactSolveResult res = exact_policy_iteration(M, e.gamma);
        CHECK(res.policy[0] == e.best_action);
        CHECK(res.values[0] == e.value);
    }
}

TEST_CASE("optimal_policy_set captures ties at a crossing") {
    MDPInstance M = example_one();
    // at 3/4 both the bank-1 action and the second chain are worth exactly 1
    PolicySetProduct S = optimal_policy_set(M, Rational(3, 4));
    CHECK(S.actions_per_state[0] == std::vector<int>{0, 2});
    CHECK(S.count() == 2);
    // at 1/2 the first chain ties the immediate reward
    PolicySetProduct T = optimal_policy_set(M, Rational(1, 2));
    CHECK(T.actions_per_state[0] == std::vector<int>{0, 1});
    // strictly inside (1/4, 1/2) the first chain wins alone
    PolicySetProduct U = optimal_policy_set(M, Rational(3, 8));
    CHECK(U.actions_per_state[0] == std::vector<int>{1});
    for (int s = 1; s < M.n_states; ++s)
        CHECK(U.actions_per_state[static_cast<std::size_t>(s)] == std::vector<int>{0});
}

TEST_CASE("policy iteration values dominate every policy") {
    RandomSpec spec;
    spec.n_states = 3;
    spec.n_actions = 3;
    spec.denominator = 4;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        spec.seed = seed;
        MDPInstance M = random_instance(spec);
        for (long num : {1, 5, 9}) {
            Rational g(num, 10);
            ExactSolveResult res = exact_policy_iteration(M, g);
            for (const Policy& pi : enumerate_policies(M)) {
                RationalVector v = exact_policy_evaluation(M, pi, g);
                for (std::size_t s = 0; s < v.size(); ++s) {
                    CHECK(res.values[s] >= v[s]);
                }
            }
        }
    }
}

TEST_CASE("float value iteration approaches the exact optimum") {
    MDPInstance M = example_one();
    for (double gamma : {0.1, 0.45, 0.6, 0.9}) {
        FloatSolveResult res = float_value_iteration(M, gamma, 1e-13);
        CHECK(res.residual <= 1e-13);
        Rational g = limit_denominator(Rational(gamma), Integer(100));
        ExactSolveResult exact = exact_policy_iteration(M, g);
        double expected = exact.values[0].get_d();
        CHECK(std::fabs(res.values[0] - expected) < 1e-9);
    }
    CHECK_THROWS_AS(float_value_iteration(M, 1.0), GammaOutOfRange);
}
