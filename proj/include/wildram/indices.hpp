#pragma once

/// Residue fixed-point indices of wild series and what they predict about
/// lower ramification.
///
/// For f of multiplicity q+1 over characteristic p, the admissible exponents
/// are Lambda = { l in [0, q] : l = q mod p }, listed increasingly as
/// l_1 < l_2 < ... < l_r with l_j = l_1 + (j-1)p and l_r = q. The j-th
/// partial index is the coefficient of 1/z in the Laurent expansion of
/// z^{q - l_j} / (z - f(z)); for j = r this is the classical residue
/// fixed-point index ind(f).

#include <cstdint>
#include <optional>
#include <vector>

#include "wildram/fp.hpp"
#include "wildram/wild.hpp"

namespace wildram {

struct LambdaSet {
    int64_t q = 0;
    uint32_t p = 0;
    std::vector<int64_t> ells; // increasing, ells.back() = q

    int r() const { return static_cast<int>(ells.size()); }
    int64_t ell(int j) const { // 1-based
        if (j < 1 || j > r()) throw PreconditionViolation("index j out of range");
        return ells[static_cast<size_t>(j) - 1];
    }
};

inline LambdaSet lambda_set(int64_t q, uint32_t p) {
    if (q < 1) throw PreconditionViolation("lambda_set needs q >= 1");
    LambdaSet L{q, p, {}};
    for (int64_t l = q % p; l <= q; l += p) L.ells.push_back(l);
    return L;
}

/// Partial index via Laurent expansion: with f - z = a_q z^{q+1} (1 + u(z)),
/// the coefficient of 1/z in z^{q-l_j}/(z-f) equals
/// -a_q^{-1} [z^{l_j}] (1+u)^{-1}.
template <CoefficientRing R>
R partial_index(const WildSeries<R>& f, int j) {
    const int64_t q = f.q_checked();
    LambdaSet L = lambda_set(q, f.char_p());
    const int64_t l = L.ell(j);
    if (f.prec() < q + l + 1)
        throw InsufficientPrecision("partial index needs prec >= q+l_j+1");
    const R aq = f.inner_coeff(q);
    const R aq_inv = aq.inverse();
    auto one_plus_u = TruncatedSeries<R>::zeros(f.ring(), static_cast<int>(l));
    one_plus_u.set_coeff(0, f.ring().one());
    for (int i = 1; i <= static_cast<int>(l); ++i)
        one_plus_u.set_coeff(i, f.inner_coeff(q + i) * aq_inv);
    auto rec = series_reciprocal(one_plus_u);
    return -(aq_inv * rec.coeff(static_cast<int>(l)));
}

/// Classical residue fixed-point index ind(f) = partial index at l_r = q.
template <CoefficientRing R>
R residue_index(const WildSeries<R>& f) {
    LambdaSet L = lambda_set(f.q_checked(), f.char_p());
    return partial_index(f, L.r());
}

template <CoefficientRing R>
R ring_pow(const R& a, int64_t e) {
    R r = a.one(), b = a;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

/// Closed multi-index formula for the same quantity:
///   -a_q^{-(l+1)} * sum over mu in N^{l+1} with |mu| = ||mu|| = l of
///   (-1)^{l - mu_0} (l - mu_0; mu_1, ..., mu_l) prod_i a_{q+i}^{mu_i},
/// where |mu| is the sum of the entries and ||mu|| the weighted sum. The mu
/// with mu_i > 0 for some i >= 1 correspond to partitions of l (mu_i = number
/// of parts equal to i, mu_0 forced); enumerated by DFS over part sizes.
template <CoefficientRing R>
R partial_index_closed(const WildSeries<R>& f, int j) {
    const int64_t q = f.q_checked();
    const uint32_t p = f.char_p();
    LambdaSet L = lambda_set(q, p);
    const int64_t l = L.ell(j);
    if (f.prec() < q + l + 1)
        throw InsufficientPrecision("closed formula needs prec >= q+l_j+1");

    R total = f.ring().zero();
    std::vector<int64_t> mu(static_cast<size_t>(l) + 1, 0); // mu[1..l]
    // DFS: choose multiplicities for part sizes l down to 1 with remaining
    // weighted budget; each complete choice has weighted sum exactly l.
    auto emit = [&]() {
        int64_t parts = 0;
        for (int64_t i = 1; i <= l; ++i) parts += mu[static_cast<size_t>(i)];
        const int64_t mu0 = l - parts; // >= 0 since each part weighs >= 1
        std::vector<int64_t> lower(mu.begin() + 1, mu.end());
        Fp coef = multinomial_mod_p(parts, lower, p);
        if (coef.is_zero()) return;
        R term = f.ring().one().scaled_by_int(static_cast<int64_t>(coef.value()));
        if ((l - mu0) % 2 != 0) term = -term;
        if (mu0 > 0) term = term * ring_pow(f.inner_coeff(q), mu0);
        for (int64_t i = 1; i <= l; ++i)
            if (mu[static_cast<size_t>(i)] > 0)
                term = term * ring_pow(f.inner_coeff(q + i), mu[static_cast<size_t>(i)]);
        total = total + term;
    };
    auto dfs = [&](auto&& self, int64_t size, int64_t budget) -> void {
        if (size == 0) {
            if (budget == 0) emit();
            return;
        }
        for (int64_t cnt = 0; cnt * size <= budget; ++cnt) {
            mu[static_cast<size_t>(size)] = cnt;
            self(self, size - 1, budget - cnt * size);
        }
        mu[static_cast<size_t>(size)] = 0;
    };
    dfs(dfs, l, l);
    return -(ring_pow(f.inner_coeff(q).inverse(), l + 1) * total);
}

/// resit(f) = mult(f)/2 - ind(f) = (q+1)/2 - ind(f); needs odd p.
template <CoefficientRing R>
R iterative_residue(const WildSeries<R>& f) {
    if (f.char_p() == 2)
        throw EvenCharacteristic("iterative residue needs 1/2, so p must be odd");
    const int64_t q = f.q_checked();
    R two = f.ring().one().scaled_by_int(2);
    return f.ring().one().scaled_by_int(q + 1) * two.inverse() - residue_index(f);
}

struct SmallestIndex {
    std::optional<int> j; // smallest j with nonzero partial index, if any
    int r = 0;
    bool operator==(const SmallestIndex&) const = default;
};

template <CoefficientRing R>
SmallestIndex smallest_index_j(const WildSeries<R>& f) {
    LambdaSet L = lambda_set(f.q_checked(), f.char_p());
    for (int j = 1; j <= L.r(); ++j)
        if (!partial_index(f, j).is_zero()) return {j, L.r()};
    return {std::nullopt, L.r()};
}

/// Everything the index side knows about f in one record.
template <CoefficientRing R>
struct IndexReport {
    int64_t q = 0;
    LambdaSet lambda;
    std::vector<R> pind;      // partial indices for j = 1..r
    R ind;                    // = pind.back()
    std::optional<R> resit;   // only for odd p
    SmallestIndex smallest;
};

template <CoefficientRing R>
IndexReport<R> index_report(const WildSeries<R>& f) {
    IndexReport<R> rep;
    rep.q = f.q_checked();
    rep.lambda = lambda_set(rep.q, f.char_p());
    rep.ind = f.ring().zero();
    for (int j = 1; j <= rep.lambda.r(); ++j) {
        rep.pind.push_back(partial_index(f, j));
        if (!rep.pind.back().is_zero() && !rep.smallest.j) rep.smallest.j = j;
    }
    rep.smallest.r = rep.lambda.r();
    rep.ind = rep.pind.back();
    if (f.char_p() != 2) rep.resit = iterative_residue(f);
    return rep;
}

/// Predicted ramification number for the exponent l at depth n:
/// omega = l*(1 + p + ... + p^{n-1}) + q*p^n; omega(.., 0) = q.
inline int64_t omega(int64_t q, int64_t ell, uint32_t p, int n) {
    int64_t geom = 0, pk = 1;
    for (int i = 0; i < n; ++i) {
        geom += pk;
        pk *= p;
    }
    return ell * geom + q * pk;
}

/// delta_n = leading coefficient of f^{p^n} - z, from the ramification data.
template <CoefficientRing R>
R delta_coefficient(const WildSeries<R>& f, int n) {
    auto prof = lower_ramification(f, n);
    const auto& lvl = prof.levels.at(static_cast<size_t>(n));
    if (!lvl.i.is_finite() || !lvl.delta)
        throw InsufficientPrecision("delta_n not resolved at this precision");
    return *lvl.delta;
}

/// Normal form under conjugation: z(1 + alpha z^q + beta z^{q+l_j})
/// mod z^{q+l_j+p+1}, with h'(0) = 1. Requires pind_i(f) = 0 for i < j.
template <CoefficientRing R>
struct NormalForm {
    WildSeries<R> g;
    TruncatedSeries<R> h;
    R alpha, beta; // beta / alpha^2 = pind_j(g) = pind_j(f)
};

template <CoefficientRing R>
NormalForm<R> normal_form(const WildSeries<R>& f, int j) {
    const int64_t q = f.q_checked();
    LambdaSet L = lambda_set(q, f.char_p());
    const int64_t l = L.ell(j);
    for (int i = 1; i < j; ++i)
        if (!partial_index(f, i).is_zero())
            throw PrecedingIndexNonzero("partial index below j does not vanish");
    auto [g, h] = eliminate_below(f, l);
    R alpha = g.inner_coeff(q);
    R beta = g.inner_coeff(q + l);
    return {std::move(g), std::move(h), std::move(alpha), std::move(beta)};
}

/// How a classification verdict was reached.
enum class VerdictKind {
    ByIndex,     // some j below ceil(q/p) has a nonzero partial index
    QRamified,   // all of those vanish; decided by the iterative residue
    Unclassified // all of those vanish and resit = 0: theory is silent
};

/// Predicted vs. measured ramification behaviour.
template <CoefficientRing R>
struct Verdict {
    int64_t q = 0;
    int s = 0; // ceil(q/p)
    SmallestIndex smallest;
    VerdictKind kind = VerdictKind::Unclassified;
    std::vector<int64_t> predicted;   // i_1..i_n for ByIndex / QRamified
    RamificationProfile<R> profile;
    bool match = true;                // at every finite measured level
};

template <CoefficientRing R>
bool profile_matches(const RamificationProfile<R>& prof,
                     const std::vector<int64_t>& predicted) {
    for (size_t n = 1; n < prof.levels.size() && n <= predicted.size(); ++n) {
        const auto& i = prof.levels[n].i;
        if (i.is_finite()) {
            if (i.value != predicted[n - 1]) return false;
        } else if (i.value - 1 <= predicted[n - 1]) {
            // Unresolved and the sound bound cannot exclude the prediction.
            throw InsufficientPrecision("level unresolved; cannot confirm or refute");
        } else {
            return false;
        }
    }
    return true;
}

/// q-ramification: i_n = q(1 + p + ... + p^n) for 1 <= n <= n_max.
/// predicted comes from the index data (resit != 0 and all partial indices
/// below s vanishing), measured from the actual iterates.
template <CoefficientRing R>
std::pair<bool, bool> is_q_ramified(const WildSeries<R>& f, int n_max) {
    const int64_t q = f.q_checked();
    const uint32_t p = f.char_p();
    if (p == 2 || q % p == 0 || q < p + 1)
        throw PreconditionViolation("q-ramification test needs odd p, p !| q, q >= p+1");
    const int s = static_cast<int>((q + p - 1) / p);
    bool predicted = !iterative_residue(f).is_zero();
    for (int j = 1; j < s && predicted; ++j)
        if (!partial_index(f, j).is_zero()) predicted = false;
    std::vector<int64_t> want;
    for (int n = 1; n <= n_max; ++n) want.push_back(omega(q, q, p, n));
    auto prof = lower_ramification(f, n_max);
    bool measured = profile_matches(prof, want);
    return {predicted, measured};
}

/// Full classification: find the smallest nonvanishing partial index; if it
/// sits below s = ceil(q/p), predict i_n = l_j(1+...+p^{n-1}) + q p^n and
/// compare with the measured profile. Otherwise defer to the q-ramification
/// criterion, or report Unclassified when resit also vanishes.
template <CoefficientRing R>
Verdict<R> classify(const WildSeries<R>& f, int n_max) {
    const int64_t q = f.q_checked();
    const uint32_t p = f.char_p();
    if (p == 2 || q % p == 0 || q < p + 1)
        throw PreconditionViolation("classification needs odd p, p !| q, q >= p+1");
    Verdict<R> v;
    v.q = q;
    v.s = static_cast<int>((q + p - 1) / p);
    v.smallest = smallest_index_j(f);
    v.profile = lower_ramification(f, n_max);
    if (v.smallest.j && *v.smallest.j < v.s) {
        v.kind = VerdictKind::ByIndex;
        const int64_t l = lambda_set(q, p).ell(*v.smallest.j);
        for (int n = 1; n <= n_max; ++n) v.predicted.push_back(omega(q, l, p, n));
        v.match = profile_matches(v.profile, v.predicted);
        return v;
    }
    if (iterative_residue(f).is_zero()) {
        v.kind = VerdictKind::Unclassified;
        return v;
    }
    v.kind = VerdictKind::QRamified;
    for (int n = 1; n <= n_max; ++n) v.predicted.push_back(omega(q, q, p, n));
    v.match = profile_matches(v.profile, v.predicted);
    return v;
}

/// Coefficient of 1/z in z^d h'(z) / h(z)^{N+1} for a coordinate h and p | d.
/// Vanishes when p does not divide N; equals h'(0)^{-d} when N = d.
template <CoefficientRing R>
R residue_of_form(const TruncatedSeries<R>& h, int64_t d, int64_t N) {
    const uint32_t p = h.ring().modulus();
    if (d < 1 || N < 1) throw PreconditionViolation("residue_of_form needs d, N >= 1");
    if (d % p != 0) throw NotDivisible("d must be divisible by p");
    if (!h.coeff(0).is_zero() || h.prec() < 1 || !h.coeff(1).is_unit())
        throw NotInvertible("h must be an invertible coordinate");
    const int64_t m = N - d; // coefficient of z^{N-d} in h' / (h/z)^{N+1}
    if (m < 0) return h.ring().zero();
    if (h.prec() < m + 1)
        throw InsufficientPrecision("need prec >= N-d+1 on h");
    auto s = series_shift_down(h, 1).truncated(static_cast<int>(m));
    auto hd = series_derivative(h).truncated(static_cast<int>(m));
    auto val = series_mul(hd, series_reciprocal(series_pow(s, N + 1)));
    return val.coeff(static_cast<int>(m));
}

} // namespace wildram
