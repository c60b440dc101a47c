#pragma once

#include "bwmdp/mdp.hpp"

#include <cstdint>
#include <vector>

namespace bwmdp {

/// Three-parabola instance: a start state with one absorbing action worth a
/// constant 1 and two deterministic reward chains whose values are parabolas
/// in the discount factor. Eight states, three actions, denominator 9. The
/// crossing structure is known in closed form, which makes this the main
/// hand-checkable fixture.
MDPInstance example_one();

/// Two effective policies whose optimality regions are exactly the given
/// partition of [0, 1). `breakpoints` must start at 0, end at 1, be strictly
/// increasing, and have even size (an odd number of subintervals), so the
/// constant action wins on the last subinterval. The chain rewards are the
/// unique interpolation making the chain value equal to 1 at every interior
/// breakpoint and 9/10 at 0.
MDPInstance interval_instance(const std::vector<Rational>& breakpoints);

/// Parameters for random instance generation. Transition rows are uniform
/// compositions of denominator into n_states parts; reward numerators are
/// uniform on [-reward_range, reward_range] over reward_denominator.
struct RandomSpec {
    int n_states = 3;
    int n_actions = 2;
    unsigned long denominator = 6;        // transition probabilities are k/denominator
    unsigned long reward_denominator = 6; // rewards are k/reward_denominator
    unsigned long reward_range = 12;      // reward numerators in [-range, range]
    std::uint64_t seed = 0;
};

/// Deterministic pseudo-random instance (same spec, same bytes, everywhere).
MDPInstance random_instance(const RandomSpec& spec);

/// Deterministic random uncertainty set for M: radii are k/m with k uniform
/// on [0, max_numerator], so every radius times m is integral.
UncertaintySet random_uncertainty(const MDPInstance& M, BallNorm norm,
                                  unsigned long max_numerator, std::uint64_t seed);

} // namespace bwmdp
