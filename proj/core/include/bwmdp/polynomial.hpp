#pragma once

#include "bwmdp/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bwmdp {

/// Dense univariate polynomial over the rationals, coefficients in degree
/// order (coeffs[k] multiplies x^k). The zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly monomial(const Rational& c, std::size_t degree);

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    /// Coefficient of x^k; zero beyond the degree.
    Rational coeff(std::size_t k) const;
    const Rational& leading() const;

    Rational eval(const Rational& x) const;
    Poly derivative() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& c) const;
    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

    /// Euclidean division: a = q*b + r with deg r < deg b. Throws
    /// ZeroPolynomial when b is zero.
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
    /// Division known to be exact; throws InternalError on nonzero remainder.
    static Poly exact_div(const Poly& a, const Poly& b);

    std::string str() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Dense univariate polynomial over the integers, same conventions.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Integer>& coeffs() const { return coeffs_; }
    Integer coeff(std::size_t k) const;
    const Integer& leading() const;

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const;
    IntPoly derivative() const;
    Poly to_poly() const;
    bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

    /// GCD of the |coefficients|; 0 for the zero polynomial.
    Integer content() const;
    /// content-free with positive leading coefficient.
    IntPoly primitive() const;
    Integer coeff_abs_sum() const;

    std::string str() const;

private:
    void trim();
    std::vector<Integer> coeffs_;
};

/// Clears denominators: smallest positive c with c*p integral, returns c*p.
IntPoly clear_denominators(const Poly& p);

/// p scaled by the given positive integer; throws NonIntegralCoefficient
/// if the result is not integral.
IntPoly scale_to_integer(const Poly& p, const Integer& scale);

/// Primitive gcd with positive leading coefficient; gcd(0,0) throws.
IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b);

/// p / gcd(p, p'), primitive, positive leading coefficient. Same roots as p,
/// all simple. Throws ZeroPolynomial on zero input.
IntPoly squarefree_part(const IntPoly& p);

/// Signed remainder sequence for root counting. chain[0] = p, chain[1] = p'.
/// Elements are primitive up to positive scaling.
std::vector<Poly> sturm_chain(const IntPoly& p);

/// Sign variations of the chain evaluated at x.
int sturm_variations(const std::vector<Poly>& chain, const Rational& x);

/// Distinct real roots of chain's polynomial in the open interval (a, b).
/// Requires p(a) != 0 and p(b) != 0.
int sturm_count_open(const std::vector<Poly>& chain, const Rational& a, const Rational& b);

} // namespace bwmdp
