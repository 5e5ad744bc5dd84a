#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "channelkit/errors.hpp"

namespace channelkit {

// Exact rational scalar: arbitrary-precision numerator/denominator, always
// held in canonical form (reduced, positive denominator). Arithmetic is
// delegated to boost::multiprecision::cpp_rational, which maintains that
// canonical form.
class rational {
public:
    using backing = boost::multiprecision::cpp_rational;
    using integer = boost::multiprecision::cpp_int;

    rational() : v_(0) {}
    rational(long long n) : v_(n) {}
    rational(long long num, long long den) {
        if (den == 0) throw invalid_argument("rational: zero denominator");
        if (den < 0) {  // canonical form keeps the sign in the numerator
            num = -num;
            den = -den;
        }
        v_ = backing(integer(num), integer(den));
    }
    explicit rational(backing v) : v_(std::move(v)) {}

    static rational parse(std::string_view text);

    rational& operator+=(const rational& o) { v_ += o.v_; return *this; }
    rational& operator-=(const rational& o) { v_ -= o.v_; return *this; }
    rational& operator*=(const rational& o) { v_ *= o.v_; return *this; }
    rational& operator/=(const rational& o) {
        if (o.v_.is_zero()) throw invalid_argument("rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend rational operator+(rational a, const rational& b) { return a += b; }
    friend rational operator-(rational a, const rational& b) { return a -= b; }
    friend rational operator*(rational a, const rational& b) { return a *= b; }
    friend rational operator/(rational a, const rational& b) { return a /= b; }
    friend rational operator-(const rational& a) { return rational(backing(-a.v_)); }

    friend bool operator==(const rational& a, const rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const rational& a, const rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const rational& a, const rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const rational& a, const rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const rational& a, const rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const rational& a, const rational& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return v_.is_zero(); }
    int sign() const { return v_.sign(); }

    integer numerator() const { return boost::multiprecision::numerator(v_); }
    integer denominator() const { return boost::multiprecision::denominator(v_); }

    double to_double() const { return v_.template convert_to<double>(); }

    // Canonical text form: "n/d", or just "n" when the denominator is one.
    std::string str() const {
        std::ostringstream os;
        os << v_;
        return os.str();
    }

    const backing& value() const { return v_; }

    friend std::ostream& operator<<(std::ostream& os, const rational& r) {
        return os << r.v_;
    }

private:
    backing v_;
};

inline rational rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s, std::string_view whole) -> integer {
        if (s.empty()) throw parse_error("empty integer in '" + std::string(whole) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw parse_error("bare sign in '" + std::string(whole) + "'");
        for (std::size_t k = i; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k])))
                throw parse_error("invalid rational literal '" + std::string(whole) + "'");
        return integer(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return rational(backing(parse_int(text, text)));
    integer num = parse_int(text.substr(0, slash), text);
    integer den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return rational(backing(num, den));
}

// Backend glue: everything the generic distribution/predicate/channel code
// needs to know about a scalar type. The rational backend is exact; the
// float backend carries the 1e-9 normalization tolerance.
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<rational> {
    static constexpr bool is_exact = true;
    static const char* name() { return "rational"; }
    static rational zero() { return rational(0); }
    static rational one() { return rational(1); }
    static rational ratio(long long num, long long den) { return rational(num, den); }
    static double to_double(const rational& v) { return v.to_double(); }
    static bool is_one_sum(const rational& s) { return s == rational(1); }
    static bool in_unit_interval(const rational& v) {
        return v >= rational(0) && v <= rational(1);
    }
    static rational clamp_unit(const rational& v) { return v; }
    static std::string render(const rational& v) { return v.str(); }
    static rational parse(std::string_view text) {
        if (text.find('.') != std::string_view::npos ||
            text.find('e') != std::string_view::npos ||
            text.find('E') != std::string_view::npos)
            throw parse_error("decimal literal '" + std::string(text) +
                              "' is not valid on the rational backend");
        return rational::parse(text);
    }
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static constexpr double sum_tolerance = 1e-9;
    static const char* name() { return "float"; }
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double ratio(long long num, long long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double to_double(double v) { return v; }
    static bool is_one_sum(double s) { return std::abs(s - 1.0) <= sum_tolerance; }
    static bool in_unit_interval(double v) {
        return v >= -sum_tolerance && v <= 1.0 + sum_tolerance;
    }
    static double clamp_unit(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }
    static std::string render(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }
    static double parse(std::string_view text) {
        // Fraction literals are accepted on the float backend too.
        auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            rational r = rational::parse(text);
            return r.to_double();
        }
        std::string s(text);
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
            throw parse_error("invalid numeric literal '" + s + "'");
        return v;
    }
};

} // namespace channelkit
