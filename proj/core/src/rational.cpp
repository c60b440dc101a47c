#include "bwmdp/rational.hpp"

#include "bwmdp/errors.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace bwmdp {

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// mpz_set_str rejects an explicit plus sign
Integer parse_integer_literal(const std::string& s) {
    return Integer(s[0] == '+' ? s.substr(1) : s);
}

} // namespace

Rational parse_rational(const std::string& text, std::optional<Integer> max_denominator) {
    std::string s = text;
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw ParseError("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!is_integer_literal(num) || !is_integer_literal(den))
            throw ParseError("bad rational literal: " + text);
        Integer n = parse_integer_literal(num), d = parse_integer_literal(den);
        if (d == 0) throw ParseError("zero denominator in rational literal: " + text);
        Rational q(n, d);
        q.canonicalize();
        return q;
    }
    if (is_integer_literal(s)) {
        return Rational(parse_integer_literal(s));
    }
    // Decimal or exponent form. Only allowed when rationalization was requested.
    if (!max_denominator)
        throw ParseError("non-integer numeric literal requires rationalization: " + text);
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0' || errno != 0)
        throw ParseError("bad numeric literal: " + text);
    Rational exact(v); // exact binary value of the double
    exact.canonicalize();
    return limit_denominator(exact, *max_denominator);
}

std::string to_string(const Rational& q) {
    Rational canon(q);
    canon.canonicalize();
    if (canon.get_den() == 1) return canon.get_num().get_str();
    return canon.get_num().get_str() + "/" + canon.get_den().get_str();
}

Rational limit_denominator(const Rational& q, const Integer& max_den) {
    if (max_den < 1) throw ParseError("max denominator must be >= 1");
    Rational canon(q);
    canon.canonicalize();
    if (canon.get_den() <= max_den) return canon;

    // Continued-fraction expansion; track convergents h/k and use the best
    // semiconvergent when the next full convergent overshoots max_den.
    Integer p0(0), q0(1), p1(1), q1(0);
    Integer n = canon.get_num(), d = canon.get_den();
    bool neg = n < 0;
    if (neg) n = -n;
    while (true) {
        Integer a = n / d;
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        if (q2 > max_den) {
            // largest t with q0 + t*q1 <= max_den
            Integer t = (max_den - q0) / q1;
            Integer ps = p0 + t * p1;
            Integer qs = q0 + t * q1;
            Rational best1(p1, q1), best2(ps, qs);
            best1.canonicalize();
            best2.canonicalize();
            Rational target(neg ? Integer(-canon.get_num()) : canon.get_num(), canon.get_den());
            target.canonicalize();
            Rational e1 = abs(best1 - target), e2 = abs(best2 - target);
            Rational pick = (e2 <= e1) ? best2 : best1;
            if (neg) pick = -pick;
            pick.canonicalize();
            return pick;
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Integer r = n - a * d;
        if (r == 0) {
            Rational exact(neg ? Integer(-p1) : p1, q1);
            exact.canonicalize();
            return exact;
        }
        n = d;
        d = r;
    }
}

namespace {

// Significand digits and decimal exponent e with q = 0.d1d2... * 10^(e+1),
// i.e. value ~ d1.d2... * 10^e. Round to nearest, ties away from zero.
void decimal_parts(const Rational& q, unsigned sig, std::string& digits, long& e, bool& neg) {
    Rational a = abs(q);
    neg = q < 0;
    // find e = floor(log10(a)) by digit counts, then correct
    long approx = static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) -
                  static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
    // candidates approx-2 .. approx+2
    e = approx - 2;
    for (long cand = approx - 2; cand <= approx + 2; ++cand) {
        // 10^cand <= a ?
        Rational p;
        Integer pow10;
        if (cand >= 0) {
            mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(cand));
            p = Rational(pow10);
        } else {
            mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-cand));
            p = Rational(Integer(1), pow10);
        }
        if (p <= a) e = cand;
    }
    // scaled = a * 10^(sig-1-e), rounded to nearest integer => sig digits
    long shift = static_cast<long>(sig) - 1 - e;
    Integer pow10;
    Rational scaled = a;
    if (shift >= 0) {
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        scaled *= Rational(pow10);
    } else {
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        scaled /= Rational(pow10);
    }
    Integer num = scaled.get_num(), den = scaled.get_den();
    Integer quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * rem >= den) quot += 1;
    digits = quot.get_str();
    if (digits.size() > sig) {
        // rounding carried into an extra digit (e.g. 9.99 -> 10.0)
        e += static_cast<long>(digits.size()) - static_cast<long>(sig);
        digits.resize(sig);
    }
    while (digits.size() < sig) digits += '0';
}

} // namespace

std::string decimal_string(const Rational& q, unsigned sig_digits) {
    if (sig_digits == 0) sig_digits = 1;
    if (q == 0) {
        std::string z = "0.";
        for (unsigned i = 1; i < sig_digits; ++i) z += '0';
        if (sig_digits == 1) z = "0";
        return z + "e0";
    }
    std::string digits;
    long e;
    bool neg;
    decimal_parts(q, sig_digits, digits, e, neg);
    std::string out = neg ? "-" : "";
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(e);
    return out;
}

std::string plot_decimal(const Rational& q, unsigned sig_digits) {
    if (sig_digits == 0) sig_digits = 1;
    if (q == 0) return "0";
    std::string digits;
    long e;
    bool neg;
    decimal_parts(q, sig_digits, digits, e, neg);
    // strip trailing zeros of the significand
    std::string sd = digits;
    while (sd.size() > 1 && sd.back() == '0') sd.pop_back();
    std::string out = neg ? "-" : "";
    if (e >= 0 && e < 17) {
        if (static_cast<std::size_t>(e) + 1 >= sd.size()) {
            out += sd;
            out.append(static_cast<std::size_t>(e) + 1 - sd.size(), '0');
        } else {
            out += sd.substr(0, static_cast<std::size_t>(e) + 1) + "." +
                   sd.substr(static_cast<std::size_t>(e) + 1);
        }
    } else if (e < 0 && e >= -6) {
        out += "0.";
        out.append(static_cast<std::size_t>(-e) - 1, '0');
        out += sd;
    } else {
        out += sd.substr(0, 1);
        if (sd.size() > 1) out += "." + sd.substr(1);
        out += "e" + std::to_string(e);
    }
    return out;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Integer ceil_sqrt(const Integer& n) {
    if (n < 0) throw InternalError("ceil_sqrt of negative");
    Integer s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    if (s * s < n) s += 1;
    return s;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace bwmdp
