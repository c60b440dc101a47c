#pragma once

#include "bwmdp/polynomial.hpp"
#include "bwmdp/rational.hpp"

#include <vector>

namespace bwmdp {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;
using PolyMatrix = std::vector<std::vector<Poly>>;

/// Solves A x = b exactly (square A). Rows are scaled to integers and
/// eliminated fraction-free (Bareiss); throws InternalError on a singular A.
RationalVector solve_linear(const RationalMatrix& A, const RationalVector& b);

/// Same elimination, several right-hand sides at once (columns of B).
std::vector<RationalVector> solve_linear_multi(const RationalMatrix& A,
                                               const std::vector<RationalVector>& columns);

/// Determinant of a polynomial matrix by fraction-free Bareiss elimination
/// over Q[x]; every division is exact by construction.
Poly poly_determinant(const PolyMatrix& M);

} // namespace bwmdp
