#include "nlb/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace nlb {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on LLONG_MIN
    uint64_t m = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
    mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
    if (m >> 32) mag_.push_back(static_cast<uint32_t>(m >> 32));
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    std::vector<uint32_t> r(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        r[i] = static_cast<uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    r[hi.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (s < 0) {
            s += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = r[i + j] + static_cast<uint64_t>(a[i]) * b[j] + carry;
            r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    uint32_t top = mag_.back();
    size_t bits = (mag_.size() - 1) * 32;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

// Shift-subtract long division on magnitudes, bit at a time. Operands here
// are a handful of limbs, so simplicity wins over Knuth D.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.assign(a.size(), 0);
    r.clear();
    if (compare_mag(a, b) < 0) {
        r = a;
        q.clear();
        return;
    }
    size_t abits = 0;
    {
        uint32_t top = a.back();
        abits = (a.size() - 1) * 32;
        while (top) {
            ++abits;
            top >>= 1;
        }
    }
    r.reserve(b.size() + 1);
    for (size_t i = abits; i-- > 0;) {
        // r = (r << 1) | bit_i(a)
        uint32_t carry = (a[i / 32] >> (i % 32)) & 1u;
        for (size_t j = 0; j < r.size(); ++j) {
            uint32_t nc = r[j] >> 31;
            r[j] = (r[j] << 1) | carry;
            carry = nc;
        }
        if (carry) r.push_back(carry);
        if (compare_mag(r, b) >= 0) {
            r = sub_mag(r, b);
            q[i / 32] |= 1u << (i % 32);
        }
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_;
    } else {
        int c = BigInt::compare_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
            r.sign_ = b.sign_;
        }
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    r.sign_ = a.sign_ * b.sign_;
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    r.mag_ = std::move(rm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt BigInt::operator/(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return r;
}

// Binary (Stein) GCD; avoids the quadratic cost of repeated long division.
BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    std::vector<uint32_t> x = a.mag_, y = b.mag_;
    if (x.empty()) {
        BigInt r;
        r.mag_ = y;
        r.sign_ = y.empty() ? 0 : 1;
        return r;
    }
    if (y.empty()) {
        BigInt r;
        r.mag_ = x;
        r.sign_ = 1;
        return r;
    }
    auto shift_right1 = [](std::vector<uint32_t>& v) {
        for (size_t i = 0; i < v.size(); ++i) {
            v[i] >>= 1;
            if (i + 1 < v.size()) v[i] |= (v[i + 1] & 1u) << 31;
        }
        if (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto is_even = [](const std::vector<uint32_t>& v) { return (v[0] & 1u) == 0; };
    size_t shift = 0;
    while (is_even(x) && is_even(y)) {
        shift_right1(x);
        shift_right1(y);
        ++shift;
    }
    while (is_even(x)) shift_right1(x);
    while (!y.empty()) {
        while (is_even(y)) shift_right1(y);
        if (compare_mag(x, y) > 0) std::swap(x, y);
        y = sub_mag(y, x);
    }
    // x << shift
    BigInt r;
    r.mag_ = x;
    size_t limb_shift = shift / 32, bit_shift = shift % 32;
    if (bit_shift) {
        uint32_t carry = 0;
        for (size_t i = 0; i < r.mag_.size(); ++i) {
            uint32_t nc = r.mag_[i] >> (32 - bit_shift);
            r.mag_[i] = (r.mag_[i] << bit_shift) | carry;
            carry = nc;
        }
        if (carry) r.mag_.push_back(carry);
    }
    if (limb_shift) r.mag_.insert(r.mag_.begin(), limb_shift, 0u);
    r.sign_ = 1;
    r.trim();
    return r;
}

int BigInt::compare(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = compare_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c : -c;
}

uint32_t BigInt::divmod_small(std::vector<uint32_t>& a, uint32_t d) {
    uint64_t rem = 0;
    for (size_t i = a.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | a[i];
        a[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return static_cast<uint32_t>(rem);
}

void BigInt::mul_add_small(std::vector<uint32_t>& a, uint32_t mul, uint32_t add) {
    uint64_t carry = add;
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t cur = static_cast<uint64_t>(a[i]) * mul + carry;
        a[i] = static_cast<uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
    }
    while (carry) {
        a.push_back(static_cast<uint32_t>(carry & 0xffffffffu));
        carry >>= 32;
    }
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt r;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        mul_add_small(r.mag_, 10, static_cast<uint32_t>(s[i] - '0'));
    }
    r.sign_ = r.mag_.empty() ? 0 : (neg ? -1 : 1);
    return r;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        uint32_t chunk = divmod_small(m, 1000000000u);
        for (int k = 0; k < 9; ++k) {
            digits.push_back(static_cast<char>('0' + chunk % 10));
            chunk /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

double BigInt::to_double() const {
    double r = 0.0;
    for (size_t i = mag_.size(); i-- > 0;) r = r * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -r : r;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    uint64_t m = (static_cast<uint64_t>(mag_[1]) << 32) | mag_[0];
    return sign_ < 0 ? m <= (1ull << 63) : m < (1ull << 63);
}

int64_t BigInt::to_int64() const {
    uint64_t m = 0;
    if (mag_.size() > 0) m |= mag_[0];
    if (mag_.size() > 1) m |= static_cast<uint64_t>(mag_[1]) << 32;
    if (sign_ < 0) return static_cast<int64_t>(~m + 1);  // two's complement, handles INT64_MIN
    return static_cast<int64_t>(m);
}

}  // namespace nlb
