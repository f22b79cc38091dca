#pragma once

/// Truncated power series over an arbitrary coefficient ring.
///
/// A series stores coefficients of z^0 .. z^prec and is "known exactly mod
/// z^{prec+1}". Binary operations return the minimum precision of their
/// operands and never silently extend. Multiplication is the naive O(prec^2)
/// convolution and composition is Horner (prec series multiplications); the
/// precisions in play keep both comfortably fast.

#include <concepts>
#include <cstdint>
#include <vector>

#include "wildram/errors.hpp"

namespace wildram {

template <class R>
concept CoefficientRing = requires(const R a, const R b, int64_t n) {
    { a + b } -> std::same_as<R>;
    { a - b } -> std::same_as<R>;
    { a * b } -> std::same_as<R>;
    { -a } -> std::same_as<R>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_unit() } -> std::convertible_to<bool>;
    { a.zero() } -> std::same_as<R>;
    { a.one() } -> std::same_as<R>;
    { a.inverse() } -> std::same_as<R>;
    { a.scaled_by_int(n) } -> std::same_as<R>;
    { a.compatible(b) } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
};

/// Result of order-like queries: either resolved exactly, or only known to be
/// beyond what the stored precision can witness (AtLeast(b) is the
/// conventional sentinel for "unresolved at this precision").
struct OrderBound {
    enum class Kind { Finite, AtLeast };
    Kind kind;
    int64_t value;

    static OrderBound finite(int64_t k) { return {Kind::Finite, k}; }
    static OrderBound at_least(int64_t b) { return {Kind::AtLeast, b}; }
    bool is_finite() const { return kind == Kind::Finite; }
    bool operator==(const OrderBound&) const = default;
};

template <CoefficientRing R>
class TruncatedSeries {
  public:
    explicit TruncatedSeries(std::vector<R> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw InvariantViolation("series needs at least the z^0 coefficient");
    }

    static TruncatedSeries zeros(const R& ring, int prec) {
        return TruncatedSeries(std::vector<R>(static_cast<size_t>(prec) + 1, ring.zero()));
    }
    /// The series z.
    static TruncatedSeries identity(const R& ring, int prec) {
        TruncatedSeries s = zeros(ring, prec);
        s.c_[1] = ring.one();
        return s;
    }
    static TruncatedSeries constant(const R& value, int prec) {
        TruncatedSeries s = zeros(value.zero(), prec);
        s.c_[0] = value;
        return s;
    }

    int prec() const { return static_cast<int>(c_.size()) - 1; }
    const R& coeff(int k) const { return c_.at(static_cast<size_t>(k)); }
    void set_coeff(int k, R v) { c_.at(static_cast<size_t>(k)) = std::move(v); }
    R ring() const { return c_[0].zero(); }

    TruncatedSeries truncated(int new_prec) const {
        if (new_prec > prec()) throw InsufficientPrecision("cannot extend a truncated series");
        return TruncatedSeries(std::vector<R>(c_.begin(), c_.begin() + new_prec + 1));
    }
    /// Zero-pad up to new_prec. Only for building known-polynomial inputs;
    /// padding claims the new coefficients are exactly zero.
    TruncatedSeries padded(int new_prec) const {
        std::vector<R> v = c_;
        v.resize(static_cast<size_t>(new_prec) + 1, ring());
        return TruncatedSeries(std::move(v));
    }

    bool operator==(const TruncatedSeries& o) const { return c_ == o.c_; }

  private:
    std::vector<R> c_;
};

namespace detail {
template <CoefficientRing R>
void check_rings(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    if (!f.coeff(0).compatible(g.coeff(0)))
        throw RingMismatch("series over different coefficient rings");
}
} // namespace detail

template <CoefficientRing R>
TruncatedSeries<R> series_add(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    detail::check_rings(f, g);
    int p = std::min(f.prec(), g.prec());
    auto r = TruncatedSeries<R>::zeros(f.ring(), p);
    for (int k = 0; k <= p; ++k) r.set_coeff(k, f.coeff(k) + g.coeff(k));
    return r;
}

template <CoefficientRing R>
TruncatedSeries<R> series_sub(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    detail::check_rings(f, g);
    int p = std::min(f.prec(), g.prec());
    auto r = TruncatedSeries<R>::zeros(f.ring(), p);
    for (int k = 0; k <= p; ++k) r.set_coeff(k, f.coeff(k) - g.coeff(k));
    return r;
}

template <CoefficientRing R>
TruncatedSeries<R> series_mul(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    detail::check_rings(f, g);
    int p = std::min(f.prec(), g.prec());
    auto r = TruncatedSeries<R>::zeros(f.ring(), p);
    for (int i = 0; i <= p; ++i) {
        if (f.coeff(i).is_zero()) continue;
        for (int j = 0; i + j <= p; ++j) {
            if (g.coeff(j).is_zero()) continue;
            r.set_coeff(i + j, r.coeff(i + j) + f.coeff(i) * g.coeff(j));
        }
    }
    return r;
}

template <CoefficientRing R>
TruncatedSeries<R> series_scale(const TruncatedSeries<R>& f, const R& a) {
    auto r = TruncatedSeries<R>::zeros(f.ring(), f.prec());
    for (int k = 0; k <= f.prec(); ++k) r.set_coeff(k, f.coeff(k) * a);
    return r;
}

/// f(g(z)). Requires g(0) = 0, so the result depends only on coefficients up
/// to the common precision.
template <CoefficientRing R>
TruncatedSeries<R> series_compose(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
    detail::check_rings(f, g);
    if (!g.coeff(0).is_zero())
        throw NonzeroConstant("inner series must have zero constant term");
    int p = std::min(f.prec(), g.prec());
    TruncatedSeries<R> gp = g.prec() == p ? g : g.truncated(p);
    auto acc = TruncatedSeries<R>::constant(f.coeff(p), p);
    for (int k = p - 1; k >= 0; --k) {
        acc = series_mul(acc, gp);
        acc.set_coeff(0, acc.coeff(0) + f.coeff(k));
    }
    return acc;
}

/// 1/u for u with invertible constant term.
template <CoefficientRing R>
TruncatedSeries<R> series_reciprocal(const TruncatedSeries<R>& u) {
    if (!u.coeff(0).is_unit())
        throw NonUnitConstant("reciprocal needs an invertible constant term");
    R c = u.coeff(0).inverse();
    auto r = TruncatedSeries<R>::zeros(u.ring(), u.prec());
    r.set_coeff(0, c);
    for (int n = 1; n <= u.prec(); ++n) {
        R s = u.ring().zero();
        for (int k = 1; k <= n; ++k) s = s + u.coeff(k) * r.coeff(n - k);
        r.set_coeff(n, -(c * s));
    }
    return r;
}

template <CoefficientRing R>
TruncatedSeries<R> series_derivative(const TruncatedSeries<R>& f) {
    int p = f.prec() > 0 ? f.prec() - 1 : 0;
    auto r = TruncatedSeries<R>::zeros(f.ring(), p);
    for (int k = 1; k <= f.prec(); ++k) r.set_coeff(k - 1, f.coeff(k).scaled_by_int(k));
    return r;
}

template <CoefficientRing R>
OrderBound series_order(const TruncatedSeries<R>& f) {
    for (int k = 0; k <= f.prec(); ++k)
        if (!f.coeff(k).is_zero()) return OrderBound::finite(k);
    return OrderBound::at_least(f.prec() + 1);
}

/// Exact division by z^k; the dropped coefficients must be zero.
template <CoefficientRing R>
TruncatedSeries<R> series_shift_down(const TruncatedSeries<R>& f, int k) {
    for (int i = 0; i < k; ++i)
        if (!f.coeff(i).is_zero())
            throw InvariantViolation("shift_down would drop a nonzero coefficient");
    auto r = TruncatedSeries<R>::zeros(f.ring(), f.prec() - k);
    for (int i = 0; i <= r.prec(); ++i) r.set_coeff(i, f.coeff(i + k));
    return r;
}

/// u^e truncated, e >= 0, by repeated squaring.
template <CoefficientRing R>
TruncatedSeries<R> series_pow(const TruncatedSeries<R>& u, int64_t e) {
    auto r = TruncatedSeries<R>::constant(u.ring().one(), u.prec());
    auto b = u;
    while (e) {
        if (e & 1) r = series_mul(r, b);
        b = series_mul(b, b);
        e >>= 1;
    }
    return r;
}

/// Compositional inverse of h with h(0) = 0 and h'(0) a unit, by Newton
/// iteration g <- g - (h(g) - z) / h'(g); each step doubles the number of
/// correct coefficients.
template <CoefficientRing R>
TruncatedSeries<R> series_comp_inverse(const TruncatedSeries<R>& h) {
    if (!h.coeff(0).is_zero())
        throw NotInvertible("compositional inverse needs h(0) = 0");
    if (h.prec() < 1 || !h.coeff(1).is_unit())
        throw NotInvertible("compositional inverse needs h'(0) invertible");
    const int p = h.prec();
    const TruncatedSeries<R> hd = series_derivative(h).padded(p);
    auto g = TruncatedSeries<R>::zeros(h.ring(), p);
    g.set_coeff(1, h.coeff(1).inverse());
    int good = 1; // h(g) = z mod z^{good+1}
    while (good < p) {
        auto hg = series_compose(h, g);
        hg.set_coeff(1, hg.coeff(1) - h.ring().one()); // h(g) - z
        auto corr = series_mul(hg, series_reciprocal(series_compose(hd, g)));
        g = series_sub(g, corr);
        good = std::min(2 * good + 1, p);
    }
    return g;
}

} // namespace wildram
