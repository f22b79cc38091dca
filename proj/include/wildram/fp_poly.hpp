#pragma once

/// Univariate polynomials F_p[t] and the fraction field F_p(t).
///
/// FpPoly is dense with trimmed trailing zeros (empty vector = 0).
/// RationalFunction keeps num/den as given apart from cancelling common powers
/// of t, so the denominator has a nonzero constant term whenever possible;
/// full gcd reduction is explicit via reduced(). Valuations (order in t) do
/// not depend on reduction.

#include <cstdint>
#include <string>
#include <vector>

#include "wildram/fp.hpp"

namespace wildram {

class FpPoly {
  public:
    FpPoly() = default;
    explicit FpPoly(uint32_t p) : p_(p) {}
    FpPoly(uint32_t p, std::vector<uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static FpPoly constant(const Fp& a) {
        FpPoly r(a.modulus());
        if (!a.is_zero()) r.c_ = {a.value()};
        return r;
    }
    static FpPoly t_power(uint32_t p, int k, uint64_t coeff = 1) {
        FpPoly r(p);
        if (coeff % p != 0) {
            r.c_.assign(static_cast<size_t>(k) + 1, 0);
            r.c_[static_cast<size_t>(k)] = static_cast<uint32_t>(coeff % p);
        }
        return r;
    }

    uint32_t modulus() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for 0

    /// Order in t (index of the lowest nonzero coefficient).
    int ord() const {
        if (c_.empty()) throw ZeroValuation("ord of the zero polynomial");
        int i = 0;
        while (c_[static_cast<size_t>(i)] == 0) ++i;
        return i;
    }

    Fp coeff(int k) const {
        if (k < 0 || static_cast<size_t>(k) >= c_.size()) return Fp(0, p_);
        return Fp(c_[static_cast<size_t>(k)], p_);
    }
    Fp leading() const { return c_.empty() ? Fp(0, p_) : Fp(c_.back(), p_); }

    FpPoly operator+(const FpPoly& o) const {
        check(o);
        FpPoly r(p_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i) {
            uint32_t s = at(i) + o.at(i);
            if (s >= p_) s -= p_;
            r.c_[i] = s;
        }
        r.trim();
        return r;
    }
    FpPoly operator-(const FpPoly& o) const {
        check(o);
        FpPoly r(p_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i) {
            uint32_t s = at(i) + p_ - o.at(i);
            if (s >= p_) s -= p_;
            r.c_[i] = s;
        }
        r.trim();
        return r;
    }
    FpPoly operator*(const FpPoly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return FpPoly(p_);
        if (is_one()) return o;
        if (o.is_one()) return *this;
        FpPoly r(p_);
        r.c_.assign(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            uint64_t a = c_[i];
            for (size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = static_cast<uint32_t>((r.c_[i + j] + a * o.c_[j]) % p_);
        }
        r.trim();
        return r;
    }
    FpPoly operator-() const {
        FpPoly r(p_);
        r.c_.resize(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] == 0 ? 0 : p_ - c_[i];
        return r;
    }
    FpPoly scale(const Fp& a) const {
        FpPoly r(p_);
        if (a.is_zero()) return r;
        r.c_.resize(c_.size());
        for (size_t i = 0; i < c_.size(); ++i)
            r.c_[i] = static_cast<uint32_t>(static_cast<uint64_t>(c_[i]) * a.value() % p_);
        r.trim();
        return r;
    }
    /// Multiply by t^k.
    FpPoly shifted(int k) const {
        if (is_zero()) return *this;
        FpPoly r(p_);
        r.c_.assign(c_.size() + static_cast<size_t>(k), 0);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<size_t>(k)] = c_[i];
        return r;
    }
    /// Exact division by t^k; requires ord() >= k.
    FpPoly unshifted(int k) const {
        if (is_zero()) return *this;
        FpPoly r(p_);
        r.c_.assign(c_.begin() + k, c_.end());
        return r;
    }

    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const FpPoly& o) const { return !(*this == o); }

    /// Euclidean division: returns (quotient, remainder).
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const {
        check(d);
        if (d.is_zero()) throw ZeroInverse("division by the zero polynomial");
        FpPoly q(p_), r = *this;
        Fp inv_lead = d.leading().inverse();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            Fp c = r.leading() * inv_lead;
            FpPoly term = FpPoly::constant(c).shifted(k);
            q = q + term;
            r = r - term * d;
        }
        return {q, r};
    }

    static FpPoly gcd(FpPoly a, FpPoly b) {
        while (!b.is_zero()) {
            FpPoly r = a.divmod(b).second;
            a = b;
            b = r;
        }
        if (!a.is_zero()) a = a.scale(a.leading().inverse()); // monic
        return a;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0) {
                s += std::to_string(c_[i]);
            } else {
                if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
                s += "t";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    uint32_t at(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check(const FpPoly& o) const {
        if (p_ != o.p_) throw ModulusMismatch("polynomial moduli differ");
    }

    uint32_t p_ = 2;
    std::vector<uint32_t> c_;
};

class RationalFunction {
  public:
    RationalFunction() = default;
    explicit RationalFunction(uint32_t p)
        : num_(p), den_(FpPoly::constant(Fp(1, p))) {}
    RationalFunction(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw ZeroInverse("zero denominator");
        if (num_.modulus() != den_.modulus()) throw ModulusMismatch("num/den moduli differ");
        cancel_t_powers();
    }
    static RationalFunction from_poly(FpPoly n) {
        uint32_t p = n.modulus();
        return RationalFunction(std::move(n), FpPoly::constant(Fp(1, p)));
    }
    static RationalFunction constant(const Fp& a) { return from_poly(FpPoly::constant(a)); }

    uint32_t modulus() const { return num_.modulus(); }
    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_unit() const { return !num_.is_zero(); }
    RationalFunction zero() const { return RationalFunction(modulus()); }
    RationalFunction one() const { return constant(Fp(1, modulus())); }

    RationalFunction operator+(const RationalFunction& o) const {
        if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
        return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator-(const RationalFunction& o) const {
        if (den_ == o.den_) return RationalFunction(num_ - o.num_, den_);
        return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num_ * o.num_, den_ * o.den_);
    }
    RationalFunction operator-() const { return raw(-num_, den_); }

    RationalFunction inverse() const {
        if (num_.is_zero()) throw ZeroInverse("inverse of the zero rational function");
        return RationalFunction(den_, num_);
    }
    RationalFunction pow(int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        RationalFunction r = one(), b = *this;
        uint64_t n = static_cast<uint64_t>(e);
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }
    RationalFunction scaled_by_int(int64_t n) const {
        return raw(num_.scale(Fp::from_int(n, modulus())), den_);
    }

    /// Equality of values: cross-multiplication, independent of representation.
    bool operator==(const RationalFunction& o) const {
        if (modulus() != o.modulus()) return false;
        return num_ * o.den_ == o.num_ * den_;
    }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    /// Fully reduced representative (monic gcd divided out).
    RationalFunction reduced() const {
        if (num_.is_zero()) return zero();
        FpPoly g = FpPoly::gcd(num_, den_);
        if (g.degree() <= 0) return *this;
        return raw(num_.divmod(g).first, den_.divmod(g).first);
    }

    bool compatible(const RationalFunction& o) const { return modulus() == o.modulus(); }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

  private:
    static RationalFunction raw(FpPoly n, FpPoly d) {
        RationalFunction r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }
    void cancel_t_powers() {
        if (num_.is_zero()) {
            den_ = FpPoly::constant(Fp(1, modulus()));
            return;
        }
        int k = std::min(num_.ord(), den_.ord());
        if (k > 0) {
            num_ = num_.unshifted(k);
            den_ = den_.unshifted(k);
        }
    }

    FpPoly num_{2};
    FpPoly den_ = FpPoly::constant(Fp(1, 2));
};

/// t-adic valuation: ord(num) - ord(den). Independent of the representative.
inline int64_t rat_valuation(const RationalFunction& r) {
    if (r.is_zero()) throw ZeroValuation("valuation of zero");
    return r.num().ord() - r.den().ord();
}

} // namespace wildram
