#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kmr {

/// Exact signed fraction in lowest terms with a positive denominator.
///
/// Values that fit in 64-bit numerator/denominator are stored inline and
/// operated on with 128-bit intermediates; anything larger is promoted to a
/// shared immutable GMP rational. The representation is canonical: a value
/// that fits inline is never held in big form, so equality and hashing can
/// compare representations directly.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t numerator, std::int64_t denominator);
    explicit Rational(const mpq_class& value);

    /// Parses "n", "-n" or "n/d" (d nonzero). Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    /// Canonical text: "n" for integers, "n/d" otherwise.
    std::string str() const;
    /// Always "n/d", including "n/1" for integers.
    std::string fraction_str() const;
    double to_double() const;

    int sign() const;
    bool is_integer() const;
    bool is_small() const { return !big_; }
    mpq_class to_mpq() const;
    std::string numerator_str() const;
    std::string denominator_str() const;

    Rational operator-() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    friend Rational operator+(const Rational& lhs, const Rational& rhs);
    friend Rational operator-(const Rational& lhs, const Rational& rhs);
    friend Rational operator*(const Rational& lhs, const Rational& rhs);
    /// Throws std::domain_error on division by zero.
    friend Rational operator/(const Rational& lhs, const Rational& rhs);

    Rational& operator+=(const Rational& rhs) { return *this = *this + rhs; }
    Rational& operator-=(const Rational& rhs) { return *this = *this - rhs; }
    Rational& operator*=(const Rational& rhs) { return *this = *this * rhs; }
    Rational& operator/=(const Rational& rhs) { return *this = *this / rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs);
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

private:
    static Rational from_wide(__int128 numerator, __int128 denominator);
    static Rational normalize_big(mpq_class value);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace kmr
