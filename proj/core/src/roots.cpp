#include "bwmdp/roots.hpp"

#include "bwmdp/errors.hpp"

#include <algorithm>
#include <deque>

namespace bwmdp {

AlgebraicNumber AlgebraicNumber::exact(const Rational& value) {
    AlgebraicNumber out;
    out.exact_ = true;
    out.value_ = value;
    out.value_.canonicalize();
    out.lo_ = out.value_;
    out.hi_ = out.value_;
    return out;
}

AlgebraicNumber AlgebraicNumber::interval(IntPoly squarefree, const Rational& lo, const Rational& hi) {
    AlgebraicNumber out;
    out.exact_ = false;
    out.poly_ = std::move(squarefree);
    out.lo_ = lo;
    out.hi_ = hi;
    out.sign_lo_ = out.poly_.sign_at(lo);
    int sign_hi = out.poly_.sign_at(hi);
    if (!(lo < hi) || out.sign_lo_ == 0 || sign_hi == 0 || out.sign_lo_ == sign_hi)
        throw InternalError("invalid isolating interval certificate");
    return out;
}

const Rational& AlgebraicNumber::value() const {
    if (!exact_) throw InternalError("value() on an interval certificate");
    return value_;
}

const IntPoly& AlgebraicNumber::poly() const {
    if (exact_) throw InternalError("poly() on an exact certificate");
    return poly_;
}

Rational AlgebraicNumber::midpoint() const {
    if (exact_) return value_;
    Rational mid = (lo_ + hi_) / 2;
    mid.canonicalize();
    return mid;
}

double AlgebraicNumber::approx() const { return midpoint().get_d(); }

void AlgebraicNumber::refine_once() {
    if (exact_) return;
    Rational mid = (lo_ + hi_) / 2;
    mid.canonicalize();
    int s = poly_.sign_at(mid);
    if (s == 0) throw InternalError("bisection probe hit a root; deflation invariant broken");
    if (s == sign_lo_) lo_ = mid;
    else hi_ = mid;
}

void AlgebraicNumber::refine_below(const Rational& width) {
    if (exact_) return;
    Rational w = hi_ - lo_;
    while (w >= width) {
        refine_once();
        w = hi_ - lo_;
    }
}

int AlgebraicNumber::compare_to_rational(const Rational& r) const {
    if (exact_) return cmp(value_, r);
    if (r <= lo_) return 1;   // root lies strictly above lo
    if (r >= hi_) return -1;
    int s = poly_.sign_at(r);
    if (s == 0) throw InternalError("rational probe is a root; deflation invariant broken");
    return s == sign_lo_ ? 1 : -1; // same sign as lo => root is to the right of r
}

bool AlgebraicNumber::vanishes(const IntPoly& g) const {
    if (g.is_zero()) return true;
    if (exact_) return g.eval(value_) == 0;
    IntPoly common = gcd_primitive(g, poly_);
    if (common.degree() < 1) return false;
    auto chain = sturm_chain(common);
    // lo/hi are non-roots of poly_, hence of its divisor `common`
    return sturm_count_open(chain, lo_, hi_) >= 1;
}

int AlgebraicNumber::compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.exact_ && b.exact_) return cmp(a.value_, b.value_);
    if (a.exact_) return -b.compare_to_rational(a.value_);
    if (b.exact_) return a.compare_to_rational(b.value_);

    // interval vs interval: equality first, via a shared root in the overlap
    Rational lo = std::max(a.lo_, b.lo_);
    Rational hi = std::min(a.hi_, b.hi_);
    if (lo < hi) {
        IntPoly g = gcd_primitive(a.poly_, b.poly_);
        if (g.degree() >= 1) {
            auto chain = sturm_chain(g);
            if (g.eval(lo) != 0 && g.eval(hi) != 0 && sturm_count_open(chain, lo, hi) >= 1)
                return 0;
        }
    }
    AlgebraicNumber x = a, y = b;
    for (int iter = 0; iter < 100000; ++iter) {
        if (x.hi_ <= y.lo_) return -1;
        if (y.hi_ <= x.lo_) return 1;
        x.refine_once();
        y.refine_once();
    }
    throw InternalError("algebraic comparison did not separate");
}

std::string AlgebraicNumber::str() const {
    if (exact_) return to_string(value_);
    return "(" + to_string(lo_) + ", " + to_string(hi_) + ")";
}

namespace {

// Deflate q by its root num/den (coprime, den >= 1): q / (den x - num),
// renormalized to integer coefficients.
IntPoly deflate_rational_root(const IntPoly& q, const Integer& num, const Integer& den) {
    std::vector<Rational> lin{Rational(-num), Rational(den)};
    Poly quotient = Poly::exact_div(q.to_poly(), Poly(std::move(lin)));
    return clear_denominators(quotient);
}

std::vector<Integer> positive_divisors(Integer n, std::size_t cap) {
    n = abs(n);
    if (n == 0) throw InternalError("divisors of zero requested");
    // trial-division factorization; a residual cofactor is treated as prime,
    // which can only make the divisor list incomplete for astronomically
    // structured inputs (the callers cap and tolerate that)
    std::vector<std::pair<Integer, unsigned>> factors;
    Integer rest = n;
    for (Integer p(2); p * p <= rest && p < 1000000; p += (p == 2 ? 1 : 2)) {
        if (rest % p == 0) {
            unsigned e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            factors.emplace_back(p, e);
        }
    }
    if (rest > 1) factors.emplace_back(rest, 1);
    std::vector<Integer> divs{Integer(1)};
    bool capped = false;
    for (const auto& [p, e] : factors) {
        if (capped) break;
        std::size_t base = divs.size();
        Integer pk(1);
        for (unsigned k = 1; k <= e && !capped; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > cap) {
                    capped = true; // best effort beyond the cap
                    break;
                }
            }
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace

UnitRoots isolate_unit_roots(const IntPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("cannot isolate roots of the zero polynomial");
    UnitRoots out;
    IntPoly q = squarefree_part(p);
    out.squarefree = q;
    if (q.degree() < 1) return out;

    std::vector<Rational> point_roots;

    if (q.coeff(0) == 0) {
        point_roots.emplace_back(0);
        // divide out x
        std::vector<Integer> shifted(q.coeffs().begin() + 1, q.coeffs().end());
        q = IntPoly(std::move(shifted));
    }
    if (!q.is_zero() && q.eval(Rational(1)) == 0) {
        out.root_at_one = true;
        q = deflate_rational_root(q, Integer(1), Integer(1));
    }

    // rational roots in (0, 1) by the rational root theorem on the
    // primitive remaining part
    if (q.degree() >= 1) {
        IntPoly qp = q.primitive();
        const std::size_t divisor_cap = 100000;
        std::vector<Integer> dens = positive_divisors(qp.leading(), divisor_cap);
        std::vector<Integer> nums = positive_divisors(qp.coeff(0), divisor_cap);
        std::vector<Rational> found;
        for (const Integer& den : dens) {
            if (den == 1) continue; // num/1 in (0,1) impossible
            for (const Integer& num : nums) {
                if (num >= den) break;
                if (gcd(num, den) != 1) continue;
                Rational cand(num, den);
                if (qp.eval(cand) == 0) found.push_back(cand);
            }
        }
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end()), found.end());
        for (const Rational& r : found) {
            point_roots.push_back(r);
            q = deflate_rational_root(q, r.get_num(), r.get_den());
        }
    }

    // Sturm bisection for the irrational remainder; q now has no rational
    // roots anywhere in [0, 1], so probes are always sign-definite
    std::vector<AlgebraicNumber> interval_roots;
    if (q.degree() >= 1) {
        auto chain = sturm_chain(q);
        struct Segment {
            Rational a, b;
            int count;
        };
        std::deque<Segment> work;
        int total = sturm_count_open(chain, Rational(0), Rational(1));
        if (total > 0) work.push_back({Rational(0), Rational(1), total});
        while (!work.empty()) {
            Segment seg = work.front();
            work.pop_front();
            if (seg.count == 1) {
                interval_roots.push_back(AlgebraicNumber::interval(q, seg.a, seg.b));
                continue;
            }
            Rational mid = (seg.a + seg.b) / 2;
            mid.canonicalize();
            if (q.eval(mid) == 0) throw InternalError("bisection probe hit undetected rational root");
            int left = sturm_count_open(chain, seg.a, mid);
            int right = seg.count - left;
            if (left > 0) work.push_back({seg.a, mid, left});
            if (right > 0) work.push_back({mid, seg.b, right});
        }
        // shrink each isolating interval until it contains no rational point root
        for (AlgebraicNumber& root : interval_roots) {
            for (const Rational& r : point_roots) {
                while (root.lo() < r && r < root.hi()) root.refine_once();
            }
        }
    }

    for (const Rational& r : point_roots) out.roots.push_back(AlgebraicNumber::exact(r));
    for (AlgebraicNumber& root : interval_roots) out.roots.push_back(std::move(root));
    std::sort(out.roots.begin(), out.roots.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return AlgebraicNumber::compare(a, b) < 0;
    });
    return out;
}

std::vector<IsolatedRoot> isolate_roots(const IntPoly& p) {
    UnitRoots unit = isolate_unit_roots(p);
    std::vector<IsolatedRoot> out;
    out.reserve(unit.roots.size());
    for (const AlgebraicNumber& r : unit.roots)
        out.push_back(IsolatedRoot{r.lo(), r.hi(), false});
    return out;
}

std::optional<AlgebraicNumber> largest_root_below_one(const IntPoly& p) {
    UnitRoots unit = isolate_unit_roots(p);
    if (unit.roots.empty()) return std::nullopt;
    return unit.roots.back();
}

int root_multiplicity(const IntPoly& p, const AlgebraicNumber& root) {
    if (p.is_zero()) throw ZeroPolynomial("multiplicity in the zero polynomial");
    if (!root.vanishes(p)) throw InternalError("root_multiplicity: not a root of p");
    IntPoly g = p;
    int mult = 0;
    while (!g.is_zero() && root.vanishes(g)) {
        ++mult;
        g = g.derivative();
    }
    return mult;
}

Rational rump_eta(long N, const Integer& L_in) {
    if (N < 1) throw ValidationError("separation bound needs degree >= 1");
    Integer L = L_in < 1 ? Integer(1) : L_in;
    Integer n_pow; // N^(N + 4)
    mpz_ui_pow_ui(n_pow.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(N + 4));
    Integer root_term = ceil_sqrt(n_pow); // ceil(N^(N/2 + 2))
    Integer lp1 = L + 1;
    Integer lp1_pow;
    mpz_pow_ui(lp1_pow.get_mpz_t(), lp1.get_mpz_t(), static_cast<unsigned long>(N));
    Rational eta(Integer(1), 2 * root_term * lp1_pow);
    eta.canonicalize();
    return eta;
}

} // namespace bwmdp
