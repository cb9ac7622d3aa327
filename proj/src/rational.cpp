#include "kmrich/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

namespace kmr {
namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr i128 kInt64Max = std::numeric_limits<std::int64_t>::max();
constexpr i128 kInt64Min = std::numeric_limits<std::int64_t>::min();

bool fits64(i128 v) { return v >= kInt64Min && v <= kInt64Max; }

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0) {
            return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
        }
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t uabs64(std::int64_t v) {
    return v < 0 ? std::uint64_t(0) - std::uint64_t(v) : std::uint64_t(v);
}

mpz_class mpz_from(i128 v) {
    const u128 mag = uabs(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
    mpz_class out = (hi << 64) + lo;
    return v < 0 ? mpz_class(-out) : out;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(numerator, denominator);
}

Rational::Rational(const mpq_class& value) { *this = normalize_big(value); }

Rational Rational::from_wide(i128 numerator, i128 denominator) {
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    if (numerator == 0) return Rational{};
    const u128 g = gcd128(uabs(numerator), u128(denominator));
    if (g > 1) {
        numerator /= i128(g);
        denominator /= i128(g);
    }
    Rational r;
    if (fits64(numerator) && fits64(denominator)) {
        r.num_ = static_cast<std::int64_t>(numerator);
        r.den_ = static_cast<std::int64_t>(denominator);
        return r;
    }
    mpq_class big(mpz_from(numerator), mpz_from(denominator));
    r.big_ = std::make_shared<const mpq_class>(std::move(big));
    r.num_ = 0;
    r.den_ = 1;
    return r;
}

Rational Rational::normalize_big(mpq_class value) {
    value.canonicalize();
    Rational r;
    if (value.get_num().fits_slong_p() && value.get_den().fits_slong_p()) {
        r.num_ = value.get_num().get_si();
        r.den_ = value.get_den().get_si();
        return r;
    }
    r.big_ = std::make_shared<const mpq_class>(std::move(value));
    return r;
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("malformed rational '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    const auto slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    const std::string_view num_text = text.substr(0, slash);
    const std::string_view den_text =
        slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(num_text, true) || !digits_ok(den_text, false)) throw fail();
    std::string num_str(num_text);
    if (num_str[0] == '+') num_str.erase(0, 1);
    mpz_class num(num_str, 10);
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw std::invalid_argument("rational '" + std::string(text) + "' has zero denominator");
    return normalize_big(mpq_class(num, den));
}

std::string Rational::numerator_str() const {
    return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const {
    return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::string Rational::str() const {
    if (is_integer()) return numerator_str();
    return numerator_str() + "/" + denominator_str();
}

std::string Rational::fraction_str() const { return numerator_str() + "/" + denominator_str(); }

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

Rational Rational::operator-() const {
    if (big_ || num_ == std::numeric_limits<std::int64_t>::min()) return normalize_big(-to_mpq());
    Rational r = *this;
    r.num_ = -num_;
    return r;
}

Rational operator+(const Rational& lhs, const Rational& rhs) {
    if (lhs.big_ || rhs.big_) return Rational::normalize_big(lhs.to_mpq() + rhs.to_mpq());
    if (lhs.den_ == rhs.den_) {
        const i128 n = i128(lhs.num_) + rhs.num_;
        if (lhs.den_ == 1 && fits64(n)) return Rational(static_cast<std::int64_t>(n));
        return Rational::from_wide(n, lhs.den_);
    }
    if (lhs.den_ == 1 || rhs.den_ == 1) {
        // gcd(n*d + c, d) = gcd(c, d) = 1, so the sum is already reduced.
        const i128 n = i128(lhs.num_) * rhs.den_ + i128(rhs.num_) * lhs.den_;
        const i128 d = i128(lhs.den_) * rhs.den_;
        if (fits64(n)) {
            Rational r;
            r.num_ = static_cast<std::int64_t>(n);
            r.den_ = static_cast<std::int64_t>(d);
            return r;
        }
        return Rational::from_wide(n, d);
    }
    return Rational::from_wide(i128(lhs.num_) * rhs.den_ + i128(rhs.num_) * lhs.den_,
                               i128(lhs.den_) * rhs.den_);
}

Rational operator-(const Rational& lhs, const Rational& rhs) { return lhs + (-rhs); }

Rational operator*(const Rational& lhs, const Rational& rhs) {
    if (lhs.big_ || rhs.big_) return Rational::normalize_big(lhs.to_mpq() * rhs.to_mpq());
    if (lhs.num_ == 0 || rhs.num_ == 0) return Rational{};
    const std::uint64_t g1 = std::gcd(uabs64(lhs.num_), std::uint64_t(rhs.den_));
    const std::uint64_t g2 = std::gcd(uabs64(rhs.num_), std::uint64_t(lhs.den_));
    const i128 n = (i128(lhs.num_) / i128(g1)) * (i128(rhs.num_) / i128(g2));
    const i128 d = (i128(lhs.den_) / i128(g2)) * (i128(rhs.den_) / i128(g1));
    if (fits64(n) && fits64(d)) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    return Rational::from_wide(n, d);
}

Rational operator/(const Rational& lhs, const Rational& rhs) {
    if (rhs.sign() == 0) throw std::domain_error("rational division by zero");
    if (lhs.big_ || rhs.big_) return Rational::normalize_big(lhs.to_mpq() / rhs.to_mpq());
    Rational inverse;
    if (rhs.num_ == std::numeric_limits<std::int64_t>::min()) {
        inverse = Rational::from_wide(rhs.den_, rhs.num_);
    } else {
        inverse.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
        inverse.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
    }
    return lhs * inverse;
}

bool operator==(const Rational& lhs, const Rational& rhs) {
    if (lhs.big_ || rhs.big_) {
        if (!lhs.big_ || !rhs.big_) return false;  // canonical representation
        return *lhs.big_ == *rhs.big_;
    }
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    if (lhs.big_ || rhs.big_) {
        const int c = cmp(lhs.to_mpq(), rhs.to_mpq());
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    if (lhs.den_ == rhs.den_) return lhs.num_ <=> rhs.num_;
    const i128 l = i128(lhs.num_) * rhs.den_;
    const i128 r = i128(rhs.num_) * lhs.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace kmr
