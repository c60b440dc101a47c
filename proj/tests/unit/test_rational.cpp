#include "bwmdp/errors.hpp"
#include "bwmdp/rational.hpp"

#include <doctest.h>

using namespace bwmdp;

TEST_CASE("parse_rational accepts fractions and integers") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(parse_rational("3/-4") == Rational(3, 4) * -1);
    CHECK(parse_rational("  7 ") == Rational(7));
    CHECK(parse_rational("-12") == Rational(-12));
    CHECK(parse_rational("0/5") == Rational(0));
    CHECK(parse_rational("+2") == Rational(2));
}

TEST_CASE("parse_rational rejects malformed literals") {
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
    CHECK_THROWS_AS(parse_rational("/2"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1 2"), ParseError);
}

TEST_CASE("parse_rational only admits decimals when rationalizing") {
    CHECK_THROWS_AS(parse_rational("0.25"), ParseError);
    CHECK_THROWS_AS(parse_rational("1e-3"), ParseError);
    CHECK(parse_rational("0.25", Integer(1000000)) == Rational(1, 4));
    CHECK(parse_rational("0.5", Integer(10)) == Rational(1, 2));
    // 1/3 is not representable in binary; rationalization recovers it
    CHECK(parse_rational("0.3333333333333333", Integer(1000)) == Rational(1, 3));
    CHECK_THROWS_AS(parse_rational("0..5", Integer(10)), ParseError);
}

TEST_CASE("to_string is canonical") {
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(Rational(-6, 8)) == "-3/4");
    CHECK(to_string(Rational(8, 4)) == "2");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(parse_rational(to_string(Rational(-22, 7))) == Rational(-22, 7));
}

TEST_CASE("limit_denominator finds best approximations") {
    // classic: pi to denominator 1000 gives 355/113
    Rational pi_ish = parse_rational("3.14159265358979", Integer(1000));
    CHECK(pi_ish == Rational(355, 113));
    CHECK(limit_denominator(Rational(1, 3), Integer(10)) == Rational(1, 3));
    CHECK(limit_denominator(Rational(667, 1000), Integer(10)) == Rational(2, 3));
    CHECK(limit_denominator(Rational(-667, 1000), Integer(10)) == Rational(-2, 3));
    CHECK_THROWS_AS(limit_denominator(Rational(1, 3), Integer(0)), ParseError);
}

TEST_CASE("decimal_string renders exact scientific decimals") {
    CHECK(decimal_string(Rational(1), 5) == "1.0000e0");
    CHECK(decimal_string(Rational(3, 4), 3) == "7.50e-1");
    CHECK(decimal_string(Rational(-3, 4), 3) == "-7.50e-1");
    CHECK(decimal_string(Rational(1, 3), 10) == "3.333333333e-1");
    CHECK(decimal_string(Rational(2, 3), 4) == "6.667e-1");
    CHECK(decimal_string(Rational(1000), 2) == "1.0e3");
    CHECK(decimal_string(Rational(999), 2) == "1.0e3");   // carry into next digit
    CHECK(decimal_string(Rational(1, 1024), 6) == "9.76563e-4"); // 976562.5 ties away
    CHECK(decimal_string(Rational(0), 3).substr(0, 2) == "0.");
}

TEST_CASE("decimal_string survives huge magnitudes") {
    Integer big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 100);
    CHECK(decimal_string(Rational(big), 3) == "1.00e100");
    CHECK(decimal_string(Rational(Integer(1), big), 3) == "1.00e-100");
    CHECK(decimal_string(Rational(big - 1, big), 5) == "1.0000e0"); // rounds up
}

TEST_CASE("plot_decimal uses fixed point near one") {
    CHECK(plot_decimal(Rational(0)) == "0");
    CHECK(plot_decimal(Rational(1)) == "1");
    CHECK(plot_decimal(Rational(1, 4)) == "0.25");
    CHECK(plot_decimal(Rational(-1, 4)) == "-0.25");
    CHECK(plot_decimal(Rational(3, 2)) == "1.5");
    CHECK(plot_decimal(Rational(100)) == "100");
    CHECK(plot_decimal(Rational(1, 3), 5) == "0.33333");
    // far outside the fixed-point window it falls back to scientific
    Integer big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 30);
    CHECK(plot_decimal(Rational(big), 3) == "1e30");
    CHECK(plot_decimal(Rational(Integer(1), big), 3) == "1e-30");
}

TEST_CASE("integer helpers") {
    CHECK(lcm(Integer(4), Integer(6)) == 12);
    CHECK(lcm(Integer(1), Integer(9)) == 9);
    CHECK(gcd(Integer(12), Integer(18)) == 6);
    CHECK(ceil_sqrt(Integer(16)) == 4);
    CHECK(ceil_sqrt(Integer(17)) == 5);
    CHECK(ceil_sqrt(Integer(24)) == 5);
    CHECK(ceil_sqrt(Integer(25)) == 5);
    CHECK(ceil_sqrt(Integer(0)) == 0);
    CHECK(ceil_sqrt(Integer(1)) == 1);
    CHECK(ceil_sqrt(Integer(2)) == 2);
}

TEST_CASE("fnv1a_hex is the reference FNV-1a") {
    // offset basis for the empty string, standard test vectors
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
    CHECK(fnv1a_hex("x") != fnv1a_hex("y"));
}
