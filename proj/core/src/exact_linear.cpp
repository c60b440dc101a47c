#include "bwmdp/exact_linear.hpp"

#include "bwmdp/errors.hpp"

namespace bwmdp {

namespace {

PolyMatrix char_matrix(const RationalMatrix& P) {
    const std::size_t n = P.size();
    PolyMatrix M(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> c;
            c.push_back(i == j ? Rational(1) : Rational(0));
            c.push_back(-P[i][j]);
            M[i][j] = Poly(std::move(c));
        }
    return M;
}

} // namespace

ValuePolys value_polys_kernel(const RationalMatrix& P, const RationalVector& r) {
    const std::size_t n = P.size();
    if (r.size() != n) throw InternalError("reward vector size mismatch");
    ValuePolys out;
    PolyMatrix M = char_matrix(P);
    out.denominator = poly_determinant(M);
    out.numerators.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        PolyMatrix Ms = M;
        for (std::size_t i = 0; i < n; ++i) Ms[i][s] = Poly::constant(r[i]);
        out.numerators[s] = poly_determinant(Ms);
    }
    return out;
}

ValuePolys value_polys(const MDPInstance& M, const Policy& pi) {
    return value_polys_kernel(induced_kernel(M, pi), induced_reward(M, pi));
}

Poly denominator_poly(const MDPInstance& M, const Policy& pi) {
    return poly_determinant(char_matrix(induced_kernel(M, pi)));
}

Poly numerator_poly(const MDPInstance& M, const Policy& pi, int state) {
    if (state < 0 || state >= M.n_states) throw ValidationError("state index out of range");
    RationalMatrix P = induced_kernel(M, pi);
    RationalVector r = induced_reward(M, pi);
    PolyMatrix Ms = char_matrix(P);
    for (std::size_t i = 0; i < P.size(); ++i) Ms[i][static_cast<std::size_t>(state)] = Poly::constant(r[i]);
    return poly_determinant(Ms);
}

Rational value_at(const MDPInstance& M, const Policy& pi, int state, const Rational& gamma) {
    if (gamma < 0 || gamma >= 1)
        throw GammaOutOfRange("gamma must lie in [0, 1), got " + to_string(gamma));
    if (state < 0 || state >= M.n_states) throw ValidationError("state index out of range");
    Poly d = denominator_poly(M, pi);
    Poly n = numerator_poly(M, pi, state);
    Rational dv = d.eval(gamma);
    if (dv <= 0) throw InternalError("denominator polynomial not positive on [0, 1)");
    Rational v = n.eval(gamma) / dv;
    v.canonicalize();
    return v;
}

Poly difference_poly_cached(const ValuePolys& a, const ValuePolys& b, int state) {
    const std::size_t s = static_cast<std::size_t>(state);
    if (s >= a.numerators.size() || s >= b.numerators.size())
        throw InternalError("state index out of range in difference_poly");
    return a.numerators[s] * b.denominator - b.numerators[s] * a.denominator;
}

Poly difference_poly(const MDPInstance& M, const Policy& pi, const Policy& pi_prime, int state) {
    if (state < 0 || state >= M.n_states) throw ValidationError("state index out of range");
    ValuePolys a = value_polys(M, pi);
    ValuePolys b = value_polys(M, pi_prime);
    return difference_poly_cached(a, b, state);
}

IntPoly scaled_integer_poly_base(const Poly& p, const Integer& base, int n_states) {
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(2 * n_states));
    return scale_to_integer(p, scale);
}

IntPoly scaled_integer_poly(const MDPInstance& M, const Poly& p) {
    return scaled_integer_poly_base(p, M.m, M.n_states);
}

} // namespace bwmdp
