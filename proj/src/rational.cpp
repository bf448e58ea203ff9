#include "temper/rational.hpp"

#include <charconv>
#include <ostream>

namespace temper {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("invalid rational '" + std::string(s) + "'");
    return v;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator");
    *this = make_reduced(n, d);
}

Rational Rational::make_reduced(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num_ = checked::narrow(n);
    r.den_ = checked::narrow(d);
    return r;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = checked::narrow(-static_cast<__int128>(num_));
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (den_ == 1 && o.den_ == 1) {
        num_ = checked::add(num_, o.num_);
        return *this;
    }
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    return *this = make_reduced(n, d);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (den_ == 1 && o.den_ == 1) {
        num_ = checked::mul(num_, o.num_);
        return *this;
    }
    return *this = make_reduced(static_cast<__int128>(num_) * o.num_,
                                static_cast<__int128>(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("division by zero");
    return *this = make_reduced(static_cast<__int128>(num_) * o.den_,
                                static_cast<__int128>(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    std::int64_t n = parse_int(text.substr(0, slash));
    std::int64_t d = parse_int(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("invalid rational '" + std::string(text) + "': zero denominator");
    return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational dot(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: arity mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

Rational dot(const RVec& a, const IVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: arity mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && b[i] != 0) s += a[i] * Rational(b[i]);
    return s;
}

void make_primitive(IVec& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
        for (auto& x : v) x /= g;
}

IVec primitive_integer(const RVec& v) {
    std::int64_t l = 1;
    for (const auto& x : v) l = checked::mul(l / std::gcd(l, x.den()), x.den());
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = checked::mul(v[i].num(), l / v[i].den());
    make_primitive(out);
    return out;
}

RVec to_rational(const IVec& v) {
    RVec out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(x);
    return out;
}

} // namespace temper
