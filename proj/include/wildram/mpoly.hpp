#pragma once

/// Sparse multivariate polynomials over F_p in variables x_0, x_1, ...
///
/// Terms are kept sorted in graded lexicographic order with x_0 > x_1 > ...,
/// so equal polynomials have identical representations and equality is a
/// plain vector compare.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wildram/fp.hpp"

namespace wildram {

/// Exponent vector, sparse: (variable index, exponent > 0) pairs sorted by
/// variable index.
struct Monomial {
    std::vector<std::pair<uint32_t, uint32_t>> factors;

    uint32_t total_degree() const {
        uint32_t d = 0;
        for (auto& [v, e] : factors) d += e;
        return d;
    }

    bool operator==(const Monomial& o) const { return factors == o.factors; }

    /// Graded lex with x_0 > x_1 > ...: higher total degree first, ties broken
    /// by the smallest variable index where the exponents differ (larger
    /// exponent there wins).
    static int cmp(const Monomial& a, const Monomial& b) {
        uint32_t da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db ? 1 : -1;
        size_t i = 0, j = 0;
        while (i < a.factors.size() && j < b.factors.size()) {
            auto [va, ea] = a.factors[i];
            auto [vb, eb] = b.factors[j];
            if (va != vb) return va < vb ? 1 : -1; // missing var = exponent 0
            if (ea != eb) return ea > eb ? 1 : -1;
            ++i, ++j;
        }
        if (i < a.factors.size()) return 1;
        if (j < b.factors.size()) return -1;
        return 0;
    }

    static Monomial mul(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.factors.reserve(a.factors.size() + b.factors.size());
        size_t i = 0, j = 0;
        while (i < a.factors.size() && j < b.factors.size()) {
            if (a.factors[i].first < b.factors[j].first) {
                r.factors.push_back(a.factors[i++]);
            } else if (a.factors[i].first > b.factors[j].first) {
                r.factors.push_back(b.factors[j++]);
            } else {
                r.factors.emplace_back(a.factors[i].first,
                                       a.factors[i].second + b.factors[j].second);
                ++i, ++j;
            }
        }
        for (; i < a.factors.size(); ++i) r.factors.push_back(a.factors[i]);
        for (; j < b.factors.size(); ++j) r.factors.push_back(b.factors[j]);
        return r;
    }

    std::string to_string() const {
        if (factors.empty()) return "1";
        std::string s;
        for (auto& [v, e] : factors) {
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(v);
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }
};

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::cmp(a, b) > 0;
    }
};

class MPoly {
  public:
    MPoly() = default;
    explicit MPoly(uint32_t p) : p_(p) {}

    static MPoly constant(const Fp& a) {
        MPoly r(a.modulus());
        if (!a.is_zero()) r.terms_.emplace_back(Monomial{}, a.value());
        return r;
    }
    static MPoly variable(uint32_t index, uint32_t p) {
        MPoly r(p);
        r.terms_.emplace_back(Monomial{{{index, 1}}}, 1);
        return r;
    }

    uint32_t modulus() const { return p_; }
    const std::vector<std::pair<Monomial, uint32_t>>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.factors.empty());
    }
    bool is_unit() const { return is_constant() && !terms_.empty(); }

    MPoly zero() const { return MPoly(p_); }
    MPoly one() const { return constant(Fp(1, p_)); }

    MPoly operator+(const MPoly& o) const { return merged(o, false); }
    MPoly operator-(const MPoly& o) const { return merged(o, true); }

    MPoly operator*(const MPoly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return MPoly(p_);
        // Single-term factors come up constantly (generic series have
        // one-term coefficients), so shift-and-go without a map.
        if (o.terms_.size() == 1) return times_term(o.terms_[0]);
        if (terms_.size() == 1) return o.times_term(terms_[0]);
        std::map<Monomial, uint32_t, MonomialGreater> acc;
        for (auto& [ma, ca] : terms_) {
            uint64_t a = ca;
            for (auto& [mb, cb] : o.terms_) {
                Monomial m = Monomial::mul(ma, mb);
                auto it = acc.emplace(std::move(m), 0).first;
                it->second = static_cast<uint32_t>((it->second + a * cb) % p_);
            }
        }
        MPoly r(p_);
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.emplace_back(m, c);
        return r;
    }

    MPoly operator-() const {
        MPoly r(p_);
        r.terms_.reserve(terms_.size());
        for (auto& [m, c] : terms_) r.terms_.emplace_back(m, p_ - c);
        return r;
    }

    MPoly scale(const Fp& a) const {
        if (a.is_zero()) return MPoly(p_);
        MPoly r(p_);
        r.terms_.reserve(terms_.size());
        for (auto& [m, c] : terms_) {
            uint32_t v = static_cast<uint32_t>(static_cast<uint64_t>(c) * a.value() % p_);
            if (v != 0) r.terms_.emplace_back(m, v);
        }
        return r;
    }
    MPoly scaled_by_int(int64_t n) const { return scale(Fp::from_int(n, p_)); }

    MPoly pow(uint32_t e) const {
        MPoly r = one(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// Inverse exists only for nonzero constants.
    MPoly inverse() const {
        if (!is_unit())
            throw NonUnitConstant("only nonzero constants are invertible in F_p[x..]");
        return constant(Fp(terms_[0].second, p_).inverse());
    }

    /// Specialize every variable to the given field values.
    Fp substitute(const std::vector<Fp>& values) const {
        Fp r(0, p_);
        for (auto& [m, c] : terms_) {
            Fp term(c, p_);
            for (auto& [v, e] : m.factors) {
                if (v >= values.size()) throw PreconditionViolation("substitution value missing");
                term *= values[v].pow(e);
            }
            r += term;
        }
        return r;
    }

    bool operator==(const MPoly& o) const { return p_ == o.p_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    bool compatible(const MPoly& o) const { return p_ == o.p_; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            if (m.factors.empty()) {
                s += std::to_string(c);
            } else {
                if (c != 1) s += std::to_string(c) + "*";
                s += m.to_string();
            }
        }
        return s;
    }

  private:
    MPoly times_term(const std::pair<Monomial, uint32_t>& t) const {
        MPoly r(p_);
        r.terms_.reserve(terms_.size());
        uint64_t b = t.second;
        for (auto& [m, c] : terms_) {
            uint32_t v = static_cast<uint32_t>(c * b % p_);
            if (v != 0) r.terms_.emplace_back(Monomial::mul(m, t.first), v);
        }
        // Multiplying by a fixed monomial preserves graded-lex order.
        return r;
    }

    MPoly merged(const MPoly& o, bool subtract) const {
        check(o);
        MPoly r(p_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            int c = Monomial::cmp(terms_[i].first, o.terms_[j].first);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                auto [m, v] = o.terms_[j++];
                r.terms_.emplace_back(m, subtract ? p_ - v : v);
            } else {
                uint32_t v = subtract ? terms_[i].second + p_ - o.terms_[j].second
                                      : terms_[i].second + o.terms_[j].second;
                if (v >= p_) v -= p_;
                if (v != 0) r.terms_.emplace_back(terms_[i].first, v);
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) {
            auto [m, v] = o.terms_[j];
            r.terms_.emplace_back(m, subtract ? p_ - v : v);
        }
        return r;
    }

    void check(const MPoly& o) const {
        if (p_ != o.p_) throw ModulusMismatch("multivariate moduli differ");
    }

    uint32_t p_ = 2;
    std::vector<std::pair<Monomial, uint32_t>> terms_;
};

inline MPoly mpoly_mul(const MPoly& a, const MPoly& b) { return a * b; }

} // namespace wildram
