#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "kmrich/rational.hpp"

using kmr::Rational;
using Q = boost::multiprecision::cpp_rational;

namespace {

Q to_q(const Rational& r) {
    return Q(boost::multiprecision::cpp_int(r.numerator_str()), boost::multiprecision::cpp_int(r.denominator_str()));
}

std::string q_str(const Q& q) {
    auto n = boost::multiprecision::numerator(q);
    auto d = boost::multiprecision::denominator(q);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
}

}  // namespace

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(-4, -2).str() == "2");
    CHECK(Rational(0, -7).str() == "0");
    CHECK(Rational(0, 5) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parse and print") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("+10/4").str() == "5/2");
    CHECK(Rational::parse("6/3").str() == "2");
    CHECK(Rational(5).fraction_str() == "5/1");
    CHECK(Rational::parse("123456789012345678901234567890/3").str() == "41152263004115226300411522630");
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
}

TEST_CASE("exact arithmetic on small values") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(Rational(7) - Rational(22, 3) == Rational(-1, 3));
    CHECK((Rational(-5, 2)).abs() == Rational(5, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("overflow promotes to big form and demotes back") {
    const Rational big = Rational(std::numeric_limits<std::int64_t>::max()) * Rational(4);
    CHECK_FALSE(big.is_small());
    CHECK(big.str() == "36893488147419103228");
    const Rational back = big / Rational(4);
    CHECK(back.is_small());
    CHECK(back == Rational(std::numeric_limits<std::int64_t>::max()));
    const Rational m = Rational(std::numeric_limits<std::int64_t>::min());
    CHECK((-m).str() == "9223372036854775808");
    CHECK((-(-m)) == m);
    CHECK((-(-m)).is_small());
}

TEST_CASE("random operations agree with an independent rational library") {
    std::mt19937_64 rng(12345);
    // Mix tiny and near-overflow magnitudes so both representations are exercised.
    auto draw = [&]() -> Rational {
        std::uniform_int_distribution<int> kind(0, 3);
        std::uniform_int_distribution<std::int64_t> small(-50, 50);
        std::uniform_int_distribution<std::int64_t> huge(std::numeric_limits<std::int64_t>::min() / 2,
                                                         std::numeric_limits<std::int64_t>::max() / 2);
        const int k = kind(rng);
        std::int64_t den = k == 0 ? huge(rng) : small(rng);
        if (den == 0) den = 1;
        const std::int64_t num = k == 1 ? huge(rng) : small(rng);
        Rational r(num, den);
        if (k == 3) r = r * Rational(huge(rng) | 1) * Rational(huge(rng) | 1);
        return r;
    };
    for (int i = 0; i < 20000; ++i) {
        const Rational x = draw();
        const Rational y = draw();
        const Q qx = to_q(x), qy = to_q(y);
        REQUIRE(to_q(x + y) == qx + qy);
        REQUIRE(to_q(x - y) == qx - qy);
        REQUIRE(to_q(x * y) == qx * qy);
        if (y.sign() != 0) REQUIRE(to_q(x / y) == qx / qy);
        REQUIRE(((x <=> y) < 0) == (qx < qy));
        REQUIRE((x == y) == (qx == qy));
        REQUIRE((x + y).str() == q_str(qx + qy));
        // Canonical representation: values that fit inline are never big.
        const Rational s = x * y;
        const Q prod = qx * qy;
        const boost::multiprecision::cpp_int limit(std::numeric_limits<std::int64_t>::max());
        const bool fits = boost::multiprecision::abs(boost::multiprecision::numerator(prod)) < limit &&
                          boost::multiprecision::denominator(prod) < limit;
        if (fits) REQUIRE(s.is_small());
        REQUIRE(Rational::parse(s.str()) == s);
    }
}
