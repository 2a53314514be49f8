#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace erasure {

using Rational = boost::multiprecision::cpp_rational;

/// A probability value that stays exact (rational) as long as every operand
/// it was built from was exact, and degrades to float64 otherwise.
class Probability {
public:
    Probability() : exact_(Rational(0)), value_(0.0) {}

    static Probability exact(const Rational& r);
    static Probability exact(long long num, long long den) { return exact(Rational(num) / den); }
    static Probability approx(double v);

    /// Parses "num/den", an integer, or a decimal float literal.
    static Probability parse(std::string_view text);

    [[nodiscard]] bool is_exact() const noexcept { return exact_.has_value(); }
    [[nodiscard]] double value() const noexcept { return value_; }
    /// Throws std::logic_error when the value is not exact.
    [[nodiscard]] const Rational& rational() const;

    [[nodiscard]] bool is_zero() const noexcept;

    /// "num/den" for exact values, shortest round-trip decimal otherwise.
    [[nodiscard]] std::string to_string() const;

    friend Probability operator+(const Probability& a, const Probability& b);
    friend Probability operator-(const Probability& a, const Probability& b);
    friend Probability operator*(const Probability& a, const Probability& b);
    friend Probability operator/(const Probability& a, const Probability& b);
    Probability& operator+=(const Probability& o) { return *this = *this + o; }
    Probability& operator*=(const Probability& o) { return *this = *this * o; }

    friend bool operator==(const Probability& a, const Probability& b);
    friend bool operator<(const Probability& a, const Probability& b);

private:
    std::optional<Rational> exact_;
    double value_;
};

/// log2 of an exact rational if it is an integral power of two.
std::optional<long long> exact_log2(const Rational& r);

} // namespace erasure
