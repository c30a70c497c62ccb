#pragma once

#include <string>
#include <string_view>

#include "nlb/bigint.hpp"

namespace nlb {

// Exact rational scalar: numerator/denominator in lowest terms, denominator
// positive. Every arithmetic result is renormalized.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long p, long long q);
    Rational(BigInt p, BigInt q);

    static Rational from_string(std::string_view s);  // "p/q" or "p"
    std::string to_string() const;

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }
    bool is_integer() const;

    Rational operator-() const;
    Rational abs() const;
    Rational reciprocal() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    static int compare(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return compare(a, b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

    double to_double() const;

private:
    BigInt num_, den_;
    void normalize();
};

// Uniform scalar access for code generic over exact (Rational) and float
// (double) table entries.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long long v) { return static_cast<double>(v); }
    static double from_ratio(long long p, long long q) { return static_cast<double>(p) / static_cast<double>(q); }
    static double to_double(double v) { return v; }
    static double abs(double v) { return v < 0 ? -v : v; }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long long v) { return Rational(v); }
    static Rational from_ratio(long long p, long long q) { return Rational(p, q); }
    static double to_double(const Rational& v) { return v.to_double(); }
    static Rational abs(const Rational& v) { return v.abs(); }
};

}  // namespace nlb
