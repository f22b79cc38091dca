#pragma once

/// Prime-field arithmetic with a runtime modulus.
///
/// Every element carries its modulus, so values from different fields can
/// coexist and mixing them is caught at run time (ModulusMismatch). Moduli are
/// odd primes below 2^31 in normal use; p = 2 is accepted here and rejected by
/// the operations that need 1/2.

#include <cstdint>
#include <vector>

#include "wildram/errors.hpp"

namespace wildram {

class Fp {
  public:
    Fp() = default;
    Fp(uint64_t v, uint32_t p) : p_(p) { v_ = static_cast<uint32_t>(v % p); }

    /// Reduce a signed integer into [0, p).
    static Fp from_int(int64_t v, uint32_t p) {
        int64_t r = v % static_cast<int64_t>(p);
        if (r < 0) r += p;
        return Fp(static_cast<uint64_t>(r), p);
    }

    uint32_t value() const { return v_; }
    uint32_t modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ != 0; }
    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }

    Fp operator+(const Fp& o) const {
        check(o);
        uint32_t s = v_ + o.v_;
        if (s >= p_) s -= p_;
        return raw(s, p_);
    }
    Fp operator-(const Fp& o) const {
        check(o);
        uint32_t s = v_ + p_ - o.v_;
        if (s >= p_) s -= p_;
        return raw(s, p_);
    }
    Fp operator*(const Fp& o) const {
        check(o);
        return raw(static_cast<uint32_t>(static_cast<uint64_t>(v_) * o.v_ % p_), p_);
    }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    /// a^e for any signed exponent; negative exponents go through the inverse.
    Fp pow(int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        Fp r = one(), b = *this;
        uint64_t n = static_cast<uint64_t>(e);
        while (n) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    /// Multiplicative inverse via Fermat: a^(p-2).
    Fp inverse() const {
        if (v_ == 0) throw ZeroInverse("inverse of zero in F_" + std::to_string(p_));
        return pow(static_cast<int64_t>(p_) - 2);
    }

    Fp scaled_by_int(int64_t n) const { return *this * from_int(n, p_); }

    bool compatible(const Fp& o) const { return p_ == o.p_; }

  private:
    static Fp raw(uint32_t v, uint32_t p) {
        Fp x;
        x.v_ = v;
        x.p_ = p;
        return x;
    }
    void check(const Fp& o) const {
        if (p_ != o.p_)
            throw ModulusMismatch("F_" + std::to_string(p_) + " vs F_" + std::to_string(o.p_));
    }

    uint32_t v_ = 0;
    uint32_t p_ = 2;
};

inline Fp field_inverse(const Fp& a) { return a.inverse(); }

/// Multinomial coefficient (top; parts...) mod p, by counting the powers of p
/// in top! / prod(parts!) and, when that count is zero, multiplying the
/// p-stripped factorial contributions mod p. Exact for any size of input.
inline Fp multinomial_mod_p(int64_t top, const std::vector<int64_t>& parts, uint32_t p) {
    int64_t sum = 0;
    for (int64_t k : parts) {
        if (k < 0) throw BadPartition("negative part");
        sum += k;
    }
    if (sum != top) throw BadPartition("parts do not sum to top");

    // nu_p(n!) via Legendre.
    auto nu = [p](int64_t n) {
        int64_t t = 0;
        for (int64_t q = n / p; q > 0; q /= p) t += q;
        return t;
    };
    int64_t carry = nu(top);
    for (int64_t k : parts) carry -= nu(k);
    if (carry > 0) return Fp(0, p);

    // Product over i of (i with p-factors removed), mod p.
    auto stripped_factorial = [p](int64_t n) {
        Fp r(1, p);
        for (int64_t i = 2; i <= n; ++i) {
            int64_t m = i;
            while (m % p == 0) m /= p;
            r *= Fp::from_int(m, p);
        }
        return r;
    };
    Fp num = stripped_factorial(top);
    Fp den(1, p);
    for (int64_t k : parts) den *= stripped_factorial(k);
    return num * den.inverse();
}

/// Trial-division primality check, adequate for p < 2^31.
inline bool is_prime_u32(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

} // namespace wildram
