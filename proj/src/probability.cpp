#include "erasure/probability.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace erasure {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size()) {
        return false;
    }
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            return false;
        }
    }
    return true;
}

cpp_int parse_int(std::string_view s)
{
    if (!all_digits(s)) {
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    return cpp_int(std::string(s));
}

double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

} // namespace

Probability Probability::exact(const Rational& r)
{
    Probability p;
    p.exact_ = r;
    p.value_ = to_double(r);
    return p;
}

Probability Probability::approx(double v)
{
    if (!std::isfinite(v)) {
        throw std::invalid_argument("probability must be finite");
    }
    Probability p;
    p.exact_.reset();
    p.value_ = v;
    return p;
}

Probability Probability::parse(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("empty probability literal");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        cpp_int num = parse_int(text.substr(0, slash));
        cpp_int den = parse_int(text.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        return exact(Rational(num, den));
    }
    if (all_digits(text)) {
        return exact(Rational(parse_int(text)));
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed probability literal '" + std::string(text) + "'");
    }
    return approx(v);
}

const Rational& Probability::rational() const
{
    if (!exact_) {
        throw std::logic_error("probability is not exact");
    }
    return *exact_;
}

bool Probability::is_zero() const noexcept
{
    return exact_ ? *exact_ == 0 : value_ == 0.0;
}

std::string Probability::to_string() const
{
    if (exact_) {
        const auto num = boost::multiprecision::numerator(*exact_);
        const auto den = boost::multiprecision::denominator(*exact_);
        return num.str() + "/" + den.str();
    }
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value_);
    (void)ec;
    return std::string(buf, ptr);
}

Probability operator+(const Probability& a, const Probability& b)
{
    if (a.exact_ && b.exact_) {
        return Probability::exact(*a.exact_ + *b.exact_);
    }
    return Probability::approx(a.value_ + b.value_);
}

Probability operator-(const Probability& a, const Probability& b)
{
    if (a.exact_ && b.exact_) {
        return Probability::exact(*a.exact_ - *b.exact_);
    }
    return Probability::approx(a.value_ - b.value_);
}

Probability operator*(const Probability& a, const Probability& b)
{
    if (a.exact_ && b.exact_) {
        return Probability::exact(*a.exact_ * *b.exact_);
    }
    return Probability::approx(a.value_ * b.value_);
}

Probability operator/(const Probability& a, const Probability& b)
{
    if (b.is_zero()) {
        throw std::domain_error("division by zero probability");
    }
    if (a.exact_ && b.exact_) {
        return Probability::exact(*a.exact_ / *b.exact_);
    }
    return Probability::approx(a.value_ / b.value_);
}

bool operator==(const Probability& a, const Probability& b)
{
    if (a.exact_ && b.exact_) {
        return *a.exact_ == *b.exact_;
    }
    return a.value_ == b.value_;
}

bool operator<(const Probability& a, const Probability& b)
{
    if (a.exact_ && b.exact_) {
        return *a.exact_ < *b.exact_;
    }
    return a.value_ < b.value_;
}

std::optional<long long> exact_log2(const Rational& r)
{
    if (r <= 0) {
        return std::nullopt;
    }
    const cpp_int num = boost::multiprecision::numerator(r);
    const cpp_int den = boost::multiprecision::denominator(r);
    auto power_of_two = [](const cpp_int& v) -> std::optional<long long> {
        if (v <= 0 || (v & (v - 1)) != 0) {
            return std::nullopt;
        }
        return static_cast<long long>(boost::multiprecision::msb(v));
    };
    if (num == 1) {
        if (auto k = power_of_two(den)) {
            return -*k;
        }
        return std::nullopt;
    }
    if (den == 1) {
        return power_of_two(num);
    }
    return std::nullopt;
}

} // namespace erasure
