#pragma once

#include "bwmdp/linalg.hpp"
#include "bwmdp/mdp.hpp"
#include "bwmdp/polynomial.hpp"

#include <vector>

namespace bwmdp {

/// Cramer data of a Markov reward process (P, r): the discounted value of
/// state s is numerators[s](gamma) / denominator(gamma) for all
/// gamma in [0, 1). denominator = det(I - gamma P), positive on [0, 1),
/// degree <= |S|; numerators have degree <= |S| - 1.
struct ValuePolys {
    Poly denominator;
    std::vector<Poly> numerators;
};

/// det(I - gamma P) for the kernel induced by pi.
Poly denominator_poly(const MDPInstance& M, const Policy& pi);

/// Numerator of state s's value under pi (replaced-column determinant).
Poly numerator_poly(const MDPInstance& M, const Policy& pi, int state);

/// All Cramer polynomials of (P, r) in one sweep.
ValuePolys value_polys_kernel(const RationalMatrix& P, const RationalVector& r);
ValuePolys value_polys(const MDPInstance& M, const Policy& pi);

/// v^pi_gamma(state) by evaluating the rational function; gamma in [0, 1).
Rational value_at(const MDPInstance& M, const Policy& pi, int state, const Rational& gamma);

///// n(s, pi) * d(pi') - n(s, pi') * d(pi): vanishes exactly where the two
/// policies' values at `state` cross. Degree <= 2|S| - 1; always has 1 as
/// a root.
Poly difference_poly(const MDPInstance& M, const Policy& pi, const Policy& pi_prime, int state);
Poly difference_poly_cached(const ValuePolys& a, const ValuePolys& b, int state);

/// p scaled by m^(2 |S|) (the instance's common denominator), which clears
/// every denominator of a difference polynomial. Throws
/// NonIntegralCoefficient if it does not.
IntPoly scaled_integer_poly(const MDPInstance& M, const Poly& p);

/// Same with an explicit denominator base (robust ell_1 kernels need 2m).
IntPoly scaled_integer_poly_base(const Poly& p, const Integer& base, int n_states);

} // namespace bwmdp
