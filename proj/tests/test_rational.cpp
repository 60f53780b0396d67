#include <doctest.h>

#include <random>

#include "shootout/rational.hpp"

using shootout::rational;

TEST_CASE("construction normalizes sign and gcd") {
    CHECK(rational(6, 8) == rational(3, 4));
    CHECK(rational(-6, 8) == rational(-3, 4));
    CHECK(rational(6, -8) == rational(-3, 4));
    CHECK(rational(0, 7) == rational(0));
    CHECK(rational(41, 144).to_string() == "41/144");
    CHECK(rational(5).to_string() == "5");
    CHECK_THROWS_AS(rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic identities") {
    const rational a(3, 4), b(2, 3);
    CHECK(a + b == rational(17, 12));
    CHECK(a - b == rational(1, 12));
    CHECK(a * b == rational(1, 2));
    CHECK(a / b == rational(9, 8));
    CHECK(-a == rational(-3, 4));
    CHECK(a + rational(0) == a);
    CHECK_THROWS_AS(a / rational(0), std::domain_error);
}

TEST_CASE("comparison is exact for large denominators") {
    // Values near each other with ~1e24 denominators; cross multiplication
    // would overflow 128 bits.
    rational x(1, 1), y(1, 1);
    for (int i = 0; i < 10; ++i) {
        x *= rational(99, 100);
        y *= rational(99, 100);
    }
    const rational dx = x * rational(9999, 10198);
    const rational dy = y * rational(9998, 10198);
    CHECK(dx > dy);
    CHECK(dy < dx);
    CHECK(dx >= dx);
    CHECK(!(dx < dx));
    CHECK(rational(-3, 4) < rational(-2, 3));
    CHECK(rational(-1, 2) < rational(1, 3));
}

TEST_CASE("parse accepts fractions, decimals and integers") {
    CHECK(*rational::parse("3/4") == rational(3, 4));
    CHECK(*rational::parse("0.79") == rational(79, 100));
    CHECK(*rational::parse("0.75") == rational(3, 4));
    CHECK(*rational::parse("1") == rational(1));
    CHECK(*rational::parse("-1/2") == rational(-1, 2));
    CHECK(*rational::parse("0.5440673828125") == rational(5440673828125ll, 10000000000000ll));
    CHECK(!rational::parse(""));
    CHECK(!rational::parse("3/"));
    CHECK(!rational::parse("1/0"));
    CHECK(!rational::parse("abc"));
    CHECK(!rational::parse("1.2.3"));
}

TEST_CASE("float conversions") {
    CHECK(rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
    CHECK((double)rational(10, 19).to_long_double() == doctest::Approx(10.0 / 19.0));
}

TEST_CASE("overflow throws instead of wrapping") {
    rational big(1);
    const rational factor(1000000007ll, 3ll);
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 8; ++i) big = big * factor * factor;
            return big;
        }(),
        std::overflow_error);
}

TEST_CASE("randomized agreement with double arithmetic") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> num(-50, 50), den(1, 50);
    for (int i = 0; i < 500; ++i) {
        const rational a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK((a + b).to_double() == doctest::Approx(a.to_double() + b.to_double()));
        CHECK((a * b).to_double() == doctest::Approx(a.to_double() * b.to_double()));
        // Denominators <= 50: distinct rationals differ by >= 1/2500, far above
        // double rounding, so the comparisons must agree exactly.
        CHECK((a < b) == (a.to_double() < b.to_double()));
    }
}
