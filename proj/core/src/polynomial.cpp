#include "bwmdp/polynomial.hpp"

#include "bwmdp/errors.hpp"

#include <sstream>

namespace bwmdp {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) {
    if (c == 0) return Poly();
    return Poly({c});
}

Poly Poly::monomial(const Rational& c, std::size_t degree) {
    if (c == 0) return Poly();
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::coeff(std::size_t k) const {
    if (k >= coeffs_.size()) return Rational(0);
    return coeffs_[k];
}

const Rational& Poly::leading() const {
    if (coeffs_.empty()) throw ZeroPolynomial("leading coefficient of zero polynomial");
    return coeffs_.back();
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = coeffs_[k] * Rational(static_cast<unsigned long>(k));
    return Poly(std::move(d));
}

Poly Poly::operator-() const {
    std::vector<Rational> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = -coeffs_[i];
    return Poly(std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] -= o.coeffs_[i];
    return Poly(std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * o.coeffs_[j];
    return Poly(std::move(v));
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return Poly();
    std::vector<Rational> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i] * c;
    return Poly(std::move(v));
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw ZeroPolynomial("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rational> rem = a.coeffs_;
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
    const Rational& lead = b.leading();
    for (long k = a.degree() - b.degree(); k >= 0; --k) {
        Rational c = rem[static_cast<std::size_t>(k + b.degree())] / lead;
        quot[static_cast<std::size_t>(k)] = c;
        if (c == 0) continue;
        for (long j = 0; j <= b.degree(); ++j)
            rem[static_cast<std::size_t>(k + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly Poly::exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw InternalError("polynomial division expected to be exact");
    return q;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1 || k == 0) os << to_string(a);
        if (k >= 1) os << "x";
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPoly::coeff(std::size_t k) const {
    if (k >= coeffs_.size()) return Integer(0);
    return coeffs_[k];
}

const Integer& IntPoly::leading() const {
    if (coeffs_.empty()) throw ZeroPolynomial("leading coefficient of zero polynomial");
    return coeffs_.back();
}

Rational IntPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += Rational(*it);
    }
    return acc;
}

int IntPoly::sign_at(const Rational& x) const {
    Rational v = eval(x);
    return sgn(v);
}

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1) return IntPoly();
    std::vector<Integer> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = coeffs_[k] * Integer(static_cast<unsigned long>(k));
    return IntPoly(std::move(d));
}

Poly IntPoly::to_poly() const {
    std::vector<Rational> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = Rational(coeffs_[i]);
    return Poly(std::move(v));
}

Integer IntPoly::content() const {
    Integer g(0);
    for (const Integer& c : coeffs_) g = gcd(g, c);
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return IntPoly();
    Integer g = content();
    if (leading() < 0) g = -g;
    std::vector<Integer> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i] / g;
    return IntPoly(std::move(v));
}

Integer IntPoly::coeff_abs_sum() const {
    Integer s(0);
    for (const Integer& c : coeffs_) s += abs(c);
    return s;
}

std::string IntPoly::str() const { return to_poly().str(); }

IntPoly clear_denominators(const Poly& p) {
    Integer scale(1);
    for (const Rational& c : p.coeffs()) scale = lcm(scale, c.get_den());
    return scale_to_integer(p, scale);
}

IntPoly scale_to_integer(const Poly& p, const Integer& scale) {
    std::vector<Integer> v(p.coeffs().size());
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        Rational c = p.coeffs()[i] * Rational(scale);
        c.canonicalize();
        if (c.get_den() != 1)
            throw NonIntegralCoefficient("coefficient " + to_string(p.coeffs()[i]) +
                                         " not integral after scaling by " + scale.get_str());
        v[i] = c.get_num();
    }
    return IntPoly(std::move(v));
}

IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) throw ZeroPolynomial("gcd of two zero polynomials");
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    Poly ra = a.primitive().to_poly();
    Poly rb = b.primitive().to_poly();
    if (ra.degree() < rb.degree()) std::swap(ra, rb);
    while (!rb.is_zero()) {
        Poly r = Poly::divrem(ra, rb).second;
        ra = rb;
        if (r.is_zero()) {
            rb = Poly();
        } else {
            rb = clear_denominators(r).primitive().to_poly();
        }
    }
    return clear_denominators(ra).primitive();
}

IntPoly squarefree_part(const IntPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("squarefree part of zero polynomial");
    if (p.degree() == 0) return IntPoly({Integer(1)});
    IntPoly g = gcd_primitive(p, p.derivative());
    if (g.degree() == 0) return p.primitive();
    Poly q = Poly::exact_div(p.to_poly(), g.to_poly());
    return clear_denominators(q).primitive();
}

std::vector<Poly> sturm_chain(const IntPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("Sturm chain of zero polynomial");
    std::vector<Poly> chain;
    chain.push_back(p.primitive().to_poly());
    Poly d = chain[0].derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        const Poly& s0 = chain[chain.size() - 2];
        const Poly& s1 = chain[chain.size() - 1];
        Poly r = Poly::divrem(s0, s1).second;
        if (r.is_zero()) break;
        // negate, then rescale by a positive constant to keep coefficients small
        IntPoly ri = clear_denominators(-r);
        Integer c = ri.content();
        std::vector<Integer> small(ri.coeffs().size());
        for (std::size_t i = 0; i < small.size(); ++i) small[i] = ri.coeffs()[i] / c;
        chain.push_back(IntPoly(std::move(small)).to_poly());
        if (chain.back().degree() == 0) break;
    }
    return chain;
}

int sturm_variations(const std::vector<Poly>& chain, const Rational& x) {
    int variations = 0;
    int prev = 0;
    for (const Poly& p : chain) {
        Rational v = p.eval(x);
        int s = sgn(v);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

int sturm_count_open(const std::vector<Poly>& chain, const Rational& a, const Rational& b) {
    if (!(a < b)) throw InternalError("sturm_count_open requires a < b");
    if (chain.empty()) throw InternalError("empty Sturm chain");
    if (chain[0].eval(a) == 0 || chain[0].eval(b) == 0)
        throw InternalError("sturm_count_open requires non-root endpoints");
    return sturm_variations(chain, a) - sturm_variations(chain, b);
}

} // namespace bwmdp
