#pragma once

/// Wildly ramified series dynamics: f(0) = 0, f'(0) = 1 over a coefficient
/// ring of characteristic p, under composition.
///
/// Conventions. mult(f) = ord_z(f(z) - z), q = mult(f) - 1, and f is written
/// z(1 + sum_{j>=q} a_j z^j); a_j is the coefficient of z^{j+1} in f. The
/// lower ramification numbers are i_n = mult(f^{p^n}) - 1 and delta_n is the
/// coefficient of z^{i_n + 1} in f^{p^n}.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wildram/series.hpp"

namespace wildram {

template <CoefficientRing R>
class WildSeries {
  public:
    explicit WildSeries(TruncatedSeries<R> s) : s_(std::move(s)) {
        if (s_.prec() < 1 || !s_.coeff(0).is_zero() || !(s_.coeff(1) == s_.ring().one()))
            throw InvariantViolation("wild series must have f(0) = 0 and f'(0) = 1");
        for (int k = 2; k <= s_.prec(); ++k) {
            if (!s_.coeff(k).is_zero()) {
                q_ = k - 1;
                break;
            }
        }
    }

    const TruncatedSeries<R>& series() const { return s_; }
    int prec() const { return s_.prec(); }
    R ring() const { return s_.ring(); }
    uint32_t char_p() const { return char_of(s_.ring()); }

    /// mult(f) - 1, when resolved within precision.
    std::optional<int64_t> q() const { return q_; }
    int64_t q_checked() const {
        if (!q_) throw InfiniteMultiplicity("multiplicity not resolved at this precision");
        return *q_;
    }

    /// a_j in f = z(1 + sum a_j z^j), i.e. the coefficient of z^{j+1}.
    const R& inner_coeff(int64_t j) const {
        if (j + 1 > s_.prec())
            throw InsufficientPrecision("coefficient beyond stored precision");
        return s_.coeff(static_cast<int>(j) + 1);
    }

  private:
    static uint32_t char_of(const R& r);

    TruncatedSeries<R> s_;
    std::optional<int64_t> q_;
};

// Characteristic extraction per ring; anything with a modulus() works.
template <CoefficientRing R>
uint32_t WildSeries<R>::char_of(const R& r) {
    return r.modulus();
}

template <CoefficientRing R>
OrderBound multiplicity(const WildSeries<R>& f) {
    if (f.q()) return OrderBound::finite(*f.q() + 1);
    return OrderBound::at_least(f.prec() + 2); // identity-to-precision sentinel
}

template <CoefficientRing R>
TruncatedSeries<R> minus_z(const TruncatedSeries<R>& s) {
    auto r = s;
    r.set_coeff(1, r.coeff(1) - s.ring().one());
    return r;
}

/// f^n under composition, by binary powering (f^{a+b} = f^a o f^b). Truncated
/// composition is exact, so the bracketing does not affect the coefficients.
template <CoefficientRing R>
WildSeries<R> iterate(const WildSeries<R>& f, int64_t n) {
    if (n < 0) throw PreconditionViolation("iterate needs n >= 0");
    auto id = TruncatedSeries<R>::identity(f.ring(), f.prec());
    auto acc = id;
    auto base = f.series();
    while (n) {
        if (n & 1) acc = series_compose(acc, base);
        n >>= 1;
        if (n) base = series_compose(base, base);
    }
    return WildSeries<R>(std::move(acc));
}

/// Difference operator: Delta_0 = base (z by default) and
/// Delta_m(z) = Delta_{m-1}(f(z)) - Delta_{m-1}(z). In characteristic p,
/// Delta_p with base z equals f^p(z) - z.
template <CoefficientRing R>
TruncatedSeries<R> delta_operator(const WildSeries<R>& f, int64_t m,
                                  std::optional<TruncatedSeries<R>> base = std::nullopt) {
    if (m < 0) throw PreconditionViolation("delta_operator needs m >= 0");
    auto d = base ? *base : TruncatedSeries<R>::identity(f.ring(), f.prec());
    for (int64_t i = 0; i < m; ++i) d = series_sub(series_compose(d, f.series()), d);
    return d;
}

/// Precision sufficient to resolve i_0..i_{n_max} and the coefficient just
/// above the deepest level, with working headroom:
/// q*(1 + p + ... + p^{n_max-1}) + q*p^{n_max} + 2q + 2.
inline int64_t required_precision(int64_t q, uint32_t p, int n_max) {
    int64_t geom = 0, pk = 1;
    for (int n = 0; n < n_max; ++n) {
        geom += pk;
        pk *= p;
    }
    return q * geom + q * pk + 2 * q + 2;
}

template <CoefficientRing R>
struct RamificationLevel {
    OrderBound i;
    std::optional<R> delta; // leading coefficient of f^{p^n} - z when resolved
};

template <CoefficientRing R>
struct RamificationProfile {
    int64_t q = 0;
    uint32_t p = 0;
    std::vector<RamificationLevel<R>> levels; // index n = 0..n_max
    bool sen_ok = true;         // i_n = i_{n-1} mod p^n at consecutive finite levels
    bool lower_bound_ok = true; // i_n >= l*(1+...+p^{n-1}) + q*p^n, l = q mod p
};

namespace detail {
/// Checks that hold for every profile: Sen's congruence and the ramification
/// lower bound. Violations indicate a computation bug, but are recorded
/// rather than thrown so harness code can count them.
template <CoefficientRing R>
void check_profile_laws(RamificationProfile<R>& prof) {
    const int64_t l = prof.q % prof.p;
    int64_t pn = 1, geom = 0, ppow = 1;
    for (size_t n = 1; n < prof.levels.size(); ++n) {
        pn *= prof.p;
        geom += ppow;
        ppow *= prof.p;
        const auto& cur = prof.levels[n].i;
        const auto& prev = prof.levels[n - 1].i;
        if (cur.is_finite() && prev.is_finite() &&
            (cur.value - prev.value) % pn != 0)
            prof.sen_ok = false;
        if (cur.is_finite() && cur.value < l * geom + prof.q * ppow)
            prof.lower_bound_ok = false;
    }
}
} // namespace detail

/// i_0..i_{n_max} with delta coefficients, computing f^{p^n} by repeated
/// p-fold iteration. Once a level is unresolved all later ones are reported
/// AtLeast(prec+1) without further work.
template <CoefficientRing R>
RamificationProfile<R> lower_ramification(const WildSeries<R>& f, int n_max) {
    RamificationProfile<R> prof;
    prof.q = f.q_checked();
    prof.p = f.char_p();
    prof.levels.push_back({OrderBound::finite(prof.q),
                           f.inner_coeff(prof.q)});
    auto F = f.series();
    bool dead = false;
    for (int n = 1; n <= n_max; ++n) {
        if (!dead) {
            F = iterate(WildSeries<R>(F), prof.p).series();
            OrderBound o = series_order(minus_z(F));
            if (o.is_finite()) {
                prof.levels.push_back({OrderBound::finite(o.value - 1),
                                       F.coeff(static_cast<int>(o.value))});
                continue;
            }
            dead = true;
        }
        prof.levels.push_back({OrderBound::at_least(f.prec() + 1), std::nullopt});
    }
    detail::check_profile_laws(prof);
    return prof;
}

/// h o f o h^{-1} for a coordinate change h (h(0) = 0, h'(0) a unit).
template <CoefficientRing R>
WildSeries<R> conjugate(const WildSeries<R>& f, const TruncatedSeries<R>& h) {
    auto hinv = series_comp_inverse(h);
    return WildSeries<R>(series_compose(series_compose(h, f.series()), hinv));
}

/// One step of coefficient elimination: for k >= 1 with k != q mod p, the
/// coordinate h = z + c z^{k+1}, c = -a_{q+k} / ((k-q) a_q), kills the
/// z^{q+k+1} coefficient of f without touching lower ones.
template <CoefficientRing R>
std::pair<WildSeries<R>, TruncatedSeries<R>> eliminate_term(const WildSeries<R>& f, int64_t k) {
    const int64_t q = f.q_checked();
    const uint32_t p = f.char_p();
    if (k < 1) throw PreconditionViolation("eliminate_term needs k >= 1");
    if ((k - q) % p == 0)
        throw NotRemovable("k = q mod p cannot be eliminated by conjugation");
    if (f.prec() < q + k + 1)
        throw InsufficientPrecision("need prec >= q+k+1 to eliminate this term");
    R c = -(f.inner_coeff(q + k) *
            (f.inner_coeff(q).scaled_by_int(k - q)).inverse());
    auto h = TruncatedSeries<R>::identity(f.ring(), f.prec());
    h.set_coeff(static_cast<int>(k) + 1, c);
    auto g = conjugate(f, h);
    if (!g.inner_coeff(q + k).is_zero())
        throw InvariantViolation("elimination failed to clear the target coefficient");
    return {std::move(g), std::move(h)};
}

/// Conjugate f into z(1 + alpha z^q + beta z^{q+l_j}) mod z^{q+l_j+p+1} by
/// eliminating every removable coefficient below that modulus. Requires the
/// partial indices below j to vanish; checked by the caller (normal_form in
/// indices.hpp verifies and forwards here).
template <CoefficientRing R>
std::pair<WildSeries<R>, TruncatedSeries<R>> eliminate_below(const WildSeries<R>& f,
                                                             int64_t ell_j) {
    const int64_t q = f.q_checked();
    const uint32_t p = f.char_p();
    if (f.prec() < q + ell_j + p + 1)
        throw InsufficientPrecision("need prec >= q+l_j+p+1 for the normal form");
    auto g = f;
    auto h_total = TruncatedSeries<R>::identity(f.ring(), f.prec());
    for (int64_t k = 1; k <= ell_j + p - 1; ++k) {
        if ((k - q) % p == 0) continue; // the surviving z^{q+l_i+1} slots
        if (g.inner_coeff(q + k).is_zero()) continue;
        auto [g2, h] = eliminate_term(g, k);
        g = std::move(g2);
        h_total = series_compose(h, h_total);
    }
    return {std::move(g), std::move(h_total)};
}

} // namespace wildram
