#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nlb {

// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs
// (little-endian, no leading zero limbs). Sized for the exact linear algebra
// done here: operands of a few hundred bits, schoolbook algorithms throughout.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_string(std::string_view s);
    std::string to_string() const;

    bool is_zero() const { return mag_.empty(); }
    int sign() const { return sign_; }
    bool is_negative() const { return sign_ < 0; }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    // Truncating division: q rounds toward zero, r carries the dividend sign,
    // a == q*b + r with |r| < |b|. Throws std::domain_error on b == 0.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& b) const;
    BigInt operator%(const BigInt& b) const;

    static BigInt gcd(const BigInt& a, const BigInt& b);  // >= 0

    // three-way compare: -1, 0, +1
    static int compare(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

    double to_double() const;
    bool fits_int64() const;
    int64_t to_int64() const;  // valid only when fits_int64()

    size_t bit_length() const;

private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    void trim();
    static int compare_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
    static uint32_t divmod_small(std::vector<uint32_t>& a, uint32_t d);  // in place, returns remainder
    static void mul_add_small(std::vector<uint32_t>& a, uint32_t mul, uint32_t add);
};

}  // namespace nlb
