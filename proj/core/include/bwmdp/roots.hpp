#pragma once

#include "bwmdp/polynomial.hpp"
#include "bwmdp/rational.hpp"

#include <optional>
#include <vector>

namespace bwmdp {

/// Isolating interval for one distinct real root. lo == hi means the root
/// is the exact rational lo. multiplicity_known stays false for intervals
/// produced by isolation (which runs on the squarefree part and therefore
/// erases multiplicity); use root_multiplicity to certify it on demand.
struct IsolatedRoot {
    Rational lo;
    Rational hi;
    bool multiplicity_known = false;
};

/// A real algebraic number, either an exact rational or "the unique root of
/// this squarefree primitive integer polynomial inside (lo, hi)". Interval
/// certificates keep sign(poly(lo)) != sign(poly(hi)) != 0, and poly has no
/// rational root inside [0, 1], so bisection probes never land on a root.
class AlgebraicNumber {
public:
    static AlgebraicNumber exact(const Rational& value);
    static AlgebraicNumber interval(IntPoly squarefree, const Rational& lo, const Rational& hi);

    bool is_exact() const { return exact_; }
    /// Exact certificates only.
    const Rational& value() const;
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    const IntPoly& poly() const;

    /// A rational inside [lo, hi] (the value itself when exact).
    Rational midpoint() const;
    double approx() const;

    /// Halves the isolating interval once (no-op when exact).
    void refine_once();
    /// Shrinks the interval width strictly below the given bound.
    void refine_below(const Rational& width);

    /// Total order on the represented numbers: -1, 0, +1.
    static int compare(const AlgebraicNumber& a, const AlgebraicNumber& b);
    /// Position of the represented number relative to a rational.
    int compare_to_rational(const Rational& r) const;

    /// Does g vanish at this number? (For interval certificates g may be any
    /// integer polynomial; decided exactly via gcd and root counting.)
    bool vanishes(const IntPoly& g) const;

    std::string str() const;

private:
    AlgebraicNumber() = default;
    bool exact_ = true;
    Rational value_;
    IntPoly poly_;
    Rational lo_, hi_;
    int sign_lo_ = 0;
};

/// Result of isolating the roots of p over the unit interval.
struct UnitRoots {
    std::vector<AlgebraicNumber> roots; // distinct roots in [0, 1), ascending
    bool root_at_one = false;           // p(1) == 0
    IntPoly squarefree;                 // squarefree part used for the isolation
};

/// Complete isolation of the distinct real roots of p in [0, 1).
/// Exact rational roots come back as exact certificates. Throws
/// ZeroPolynomial on the zero polynomial.
UnitRoots isolate_unit_roots(const IntPoly& p);

/// Interval view of isolate_unit_roots.
std::vector<IsolatedRoot> isolate_roots(const IntPoly& p);

/// Largest root in [0, 1), if any.
std::optional<AlgebraicNumber> largest_root_below_one(const IntPoly& p);

/// Multiplicity of the given root in p (root must actually be a root of p).
int root_multiplicity(const IntPoly& p, const AlgebraicNumber& root);

/// Root separation bound for a degree-N integer polynomial whose coefficient
/// magnitudes sum to at most L: distinct real roots lie at distance more than
/// eta = 1 / (2 ceil(N^(N/2 + 2)) (L + 1)^N) from each other.
/// Requires N >= 1; L is clamped up to 1.
Rational rump_eta(long N, const Integer& L);

} // namespace bwmdp
