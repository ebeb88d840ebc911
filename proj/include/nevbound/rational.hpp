#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace nevbound {

// Exact rational number with 64-bit numerator and denominator; used for exponent arithmetic.
class Rational {
public:
    Rational(long long num = 0, long long den = 1);

    // Accepts "p/q", integers and finite decimals ("1.25").
    static Rational parse(std::string_view text);
    // Best approximation with denominator at most max_den (continued fractions).
    static Rational from_double(double x, long long max_den = 1000000);

    long long num() const { return num_; }
    long long den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    Rational operator-() const { return Rational(-num_, den_); }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    long long num_;
    long long den_;
};

}  // namespace nevbound
