#pragma once

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace temper {

/// Raised when an exact computation leaves the 64-bit range. Results are
/// never silently wrapped; callers see this instead.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

namespace checked {

inline std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < -static_cast<__int128>(INT64_MAX))
        throw OverflowError("exact arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    return narrow(static_cast<__int128>(a) * b);
}

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    return narrow(static_cast<__int128>(a) + b);
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    return narrow(static_cast<__int128>(a) - b);
}

} // namespace checked

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator, so equality is
/// structural. Intermediate products use 128-bit integers and every result is
/// range-checked.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {} // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    Rational operator-() const;
    Rational abs() const { return num_ < 0 ? -*this : *this; }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "n" for integers, "n/d" otherwise.
    std::string str() const;

    /// Accepts "n", "-n", "n/d". Throws std::invalid_argument on anything else,
    /// including a zero denominator.
    static Rational parse(std::string_view text);

private:
    static Rational make_reduced(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

using RVec = std::vector<Rational>;
using IVec = std::vector<std::int64_t>;

Rational dot(const RVec& a, const RVec& b);
Rational dot(const RVec& a, const IVec& b);

/// Scales a rational vector to the primitive integer vector on the same ray.
IVec primitive_integer(const RVec& v);
/// Divides out the gcd of the entries (sign preserved).
void make_primitive(IVec& v);
RVec to_rational(const IVec& v);

} // namespace temper
