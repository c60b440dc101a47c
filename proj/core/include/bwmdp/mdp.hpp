#pragma once

#include "bwmdp/linalg.hpp"
#include "bwmdp/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bwmdp {

/// Deterministic stationary policy: action index per state.
using Policy = std::vector<int>;

enum class BallNorm { L1, Linf };

/// Per state-action rectangular uncertainty around the nominal kernel:
/// each row (s, a) ranges over the probability simplex intersected with a
/// norm ball of the given radius centred at the nominal row.
struct UncertaintySet {
    BallNorm norm = BallNorm::Linf;
    std::vector<std::vector<Rational>> radii; // [state][action]
};

/// Finite MDP with rational data. All states share one action menu;
/// rewards[s][a], transitions[s][a][s']. m is the common denominator of
/// every probability and reward (derived during validation when absent),
/// r_inf = max |m * reward|.
struct MDPInstance {
    int n_states = 0;
    int n_actions = 0;
    std::vector<std::vector<Rational>> rewards;
    std::vector<std::vector<std::vector<Rational>>> transitions;
    std::optional<Integer> m_declared;
    std::optional<UncertaintySet> uncertainty;

    // filled by validate()
    Integer m = 0;
    Integer r_inf = 0;
};

/// Checks shapes, stochasticity, nonnegativity and the common denominator;
/// fills m and r_inf. Throws ValidationError.
void validate(MDPInstance& M);

bool instances_equal(const MDPInstance& a, const MDPInstance& b);

RationalVector induced_reward(const MDPInstance& M, const Policy& pi);
RationalMatrix induced_kernel(const MDPInstance& M, const Policy& pi);

/// Representative action indices per state after collapsing actions with
/// identical reward and transition row (lowest index represents its class).
std::vector<std::vector<int>> effective_actions(const MDPInstance& M);

/// Number of policies over the representative menus (product of menu sizes).
Integer effective_policy_count(const MDPInstance& M);

/// All policies over representative actions, lexicographic order.
/// Throws SpaceTooLarge when the count exceeds the guard.
std::vector<Policy> enumerate_policies(const MDPInstance& M,
                                       const Integer& guard = Integer(1000000));

std::string policy_label(const Policy& pi);

} // namespace bwmdp
