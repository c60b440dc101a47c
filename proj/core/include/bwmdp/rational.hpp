#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bwmdp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "num/den", "num", or (optionally) a decimal/float literal.
/// Throws ParseError on malformed input or zero denominator.
/// Floats are rejected unless max_denominator is given, in which case the
/// closest rational with denominator <= max_denominator is substituted.
Rational parse_rational(const std::string& text,
                        std::optional<Integer> max_denominator = std::nullopt);

/// Canonical text form: "num/den" in lowest terms, or "num" when den == 1.
std::string to_string(const Rational& q);

/// Best rational approximation of q with denominator <= max_den
/// (continued-fraction convergent / semiconvergent).
Rational limit_denominator(const Rational& q, const Integer& max_den);

/// Round-to-nearest decimal rendering with sig_digits significant digits,
/// scientific notation, exact integer arithmetic throughout.
/// decimal_string(1/18, 5) == "5.5556e-2".
std::string decimal_string(const Rational& q, unsigned sig_digits = 30);

/// Plain decimal rendering for plotting: up to sig_digits significant digits,
/// fixed-point when the exponent is moderate, else scientific.
std::string plot_decimal(const Rational& q, unsigned sig_digits = 17);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Smallest s with s*s >= n (n >= 0).
Integer ceil_sqrt(const Integer& n);

/// Deterministic 64-bit FNV-1a digest of a byte string, rendered as hex.
std::string fnv1a_hex(const std::string& bytes);

} // namespace bwmdp
