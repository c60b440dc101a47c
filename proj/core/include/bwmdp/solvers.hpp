#pragma once

#include "bwmdp/mdp.hpp"

#include <vector>

namespace bwmdp {

/// The set of all optimal policies at a fixed discount factor, stored in
/// product form: per state, the sorted set of optimal (greedy) actions
/// restricted to representative actions. The full set is the product.
struct PolicySetProduct {
    std::vector<std::vector<int>> actions_per_state;

    Integer count() const;
    bool operator==(const PolicySetProduct& o) const = default;
    bool contains(const Policy& pi) const;
    /// Lexicographically smallest member.
    Policy min_policy() const;
    /// All members; throws SpaceTooLarge past the guard.
    std::vector<Policy> expand(const Integer& guard = Integer(1000000)) const;
};

struct ExactSolveResult {
    Policy policy;
    RationalVector values;
    unsigned iterations = 0;
};

/// Exact discounted policy evaluation: solves (I - gamma P_pi) v = r_pi.
RationalVector exact_policy_evaluation(const MDPInstance& M, const Policy& pi,
                                       const Rational& gamma);

/// Exact policy iteration over representative actions. Improvement is
/// lexicographic (smallest greedy action) and a state keeps its action
/// whenever it is still greedy, so the iteration cannot cycle through
/// equal-value policies. gamma in [0, 1).
ExactSolveResult exact_policy_iteration(const MDPInstance& M, const Rational& gamma);

/// All optimal policies at gamma, via greedy sets of the exact optimal
/// values (no enumeration of the policy space).
PolicySetProduct optimal_policy_set(const MDPInstance& M, const Rational& gamma);

struct FloatSolveResult {
    Policy policy;
    std::vector<double> values;
    unsigned long iterations = 0;
    double residual = 0.0;
};

/// Plain double-precision value iteration to the given sup-norm Bellman
/// residual; the returned policy is greedy for the final values.
FloatSolveResult float_value_iteration(const MDPInstance& M, double gamma, double tol = 1e-12);

} // namespace bwmdp
