#include "doctest.h"
#include "temper/linalg.hpp"
#include "temper/rational.hpp"

#include <random>

using namespace temper;

TEST_CASE("rationals are kept in lowest terms with positive denominator") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(0, -5) == Rational(0));
    CHECK(Rational(0, -5).den() == 1);
    CHECK(r.str() == "-3/2");
    CHECK(Rational(7).str() == "7");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parse accepts integers and fractions only") {
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("2/-3") == Rational(-2, 3));
    for (const char* bad : {"", "1/0", "1/", "/2", "1.5", "a", "1/2/3", " 1", "--1"})
        CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
}

TEST_CASE("overflow is reported, never wrapped") {
    Rational big(INT64_MAX);
    CHECK_THROWS_AS(big + Rational(1), OverflowError);
    CHECK_THROWS_AS(big * Rational(2), OverflowError);
    CHECK_NOTHROW(big * Rational(1, 2));
    Rational a(1, 4000000007LL), b(1, 4000000009LL);
    CHECK_THROWS_AS(a * b, OverflowError);
}

TEST_CASE("field identities on random small rationals") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 30);
    for (int i = 0; i < 2000; ++i) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK((a / b) * b == a);
        // ordering agrees with cross multiplication
        bool less = static_cast<__int128>(a.num()) * b.den() < static_cast<__int128>(b.num()) * a.den();
        CHECK((a < b) == less);
        CHECK(Rational::parse(a.str()) == a);
    }
}

TEST_CASE("primitive integer vectors") {
    IVec p = primitive_integer({Rational(1, 2), Rational(-3, 4), Rational(0)});
    CHECK(p == IVec{2, -3, 0});
    IVec v{4, -6, 10};
    make_primitive(v);
    CHECK(v == IVec{2, -3, 5});
}

TEST_CASE("row reduction, nullspace and inverse") {
    RMatrix m = RMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
    CHECK(rank(m) == 2);
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(dot(m.row(i), ns[0]).is_zero());
    RMatrix a = RMatrix::from_rows({{2, 1}, {1, 1}}, 2);
    CHECK(a * inverse(a) == RMatrix::identity(2));
    CHECK_THROWS(inverse(m));
    Span s(3);
    CHECK(s.add({1, 0, 1}));
    CHECK(s.add({0, 1, 0}));
    CHECK_FALSE(s.add({2, 3, 2}));
    CHECK(s.contains({1, 1, 1}));
    CHECK_FALSE(s.contains({1, 0, 0}));
}
