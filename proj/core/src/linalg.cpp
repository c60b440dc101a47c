#include "bwmdp/linalg.hpp"

#include "bwmdp/errors.hpp"

namespace bwmdp {

namespace {

// Fraction-free forward elimination of the integer matrix M (n rows,
// n + k columns, first n form the square system). Returns the permutation
// sign implicitly by leaving the triangularized matrix in place; throws on
// a singular leading block.
void bareiss_forward(std::vector<std::vector<Integer>>& M, std::size_t n) {
    Integer prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && M[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) throw InternalError("singular matrix in exact solve");
            std::swap(M[k], M[swap_row]);
            // row swap flips det sign; irrelevant for solving
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < M[i].size(); ++j) {
                Integer t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                if (t % prev != 0) throw InternalError("Bareiss division not exact");
                M[i][j] = t / prev;
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    if (M[n - 1][n - 1] == 0) throw InternalError("singular matrix in exact solve");
}

} // namespace

std::vector<RationalVector> solve_linear_multi(const RationalMatrix& A,
                                               const std::vector<RationalVector>& columns) {
    const std::size_t n = A.size();
    if (n == 0) return std::vector<RationalVector>(columns.size());
    const std::size_t k = columns.size();
    std::vector<std::vector<Integer>> M(n, std::vector<Integer>(n + k));
    for (std::size_t i = 0; i < n; ++i) {
        if (A[i].size() != n) throw InternalError("non-square matrix in exact solve");
        Integer scale(1);
        for (std::size_t j = 0; j < n; ++j) scale = lcm(scale, A[i][j].get_den());
        for (std::size_t c = 0; c < k; ++c) {
            if (columns[c].size() != n) throw InternalError("rhs size mismatch in exact solve");
            scale = lcm(scale, columns[c][i].get_den());
        }
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = A[i][j] * Rational(scale);
            v.canonicalize();
            M[i][j] = v.get_num();
        }
        for (std::size_t c = 0; c < k; ++c) {
            Rational v = columns[c][i] * Rational(scale);
            v.canonicalize();
            M[i][n + c] = v.get_num();
        }
    }
    bareiss_forward(M, n);
    std::vector<RationalVector> out(k, RationalVector(n));
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            Rational acc(M[ii][n + c]);
            for (std::size_t j = ii + 1; j < n; ++j) acc -= Rational(M[ii][j]) * out[c][j];
            acc /= Rational(M[ii][ii]);
            acc.canonicalize();
            out[c][ii] = acc;
        }
    }
    return out;
}

RationalVector solve_linear(const RationalMatrix& A, const RationalVector& b) {
    return solve_linear_multi(A, {b})[0];
}

Poly poly_determinant(const PolyMatrix& M_in) {
    const std::size_t n = M_in.size();
    if (n == 0) return Poly::constant(Rational(1));
    PolyMatrix M = M_in;
    for (const auto& row : M)
        if (row.size() != n) throw InternalError("non-square matrix in poly_determinant");
    int sign = 1;
    Poly prev = Poly::constant(Rational(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && M[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return Poly(); // singular: zero column below the pivot
            std::swap(M[k], M[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                M[i][j] = Poly::exact_div(t, prev);
            }
            M[i][k] = Poly();
        }
        prev = M[k][k];
    }
    Poly det = M[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
}

} // namespace bwmdp
