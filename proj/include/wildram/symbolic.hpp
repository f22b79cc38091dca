#pragma once

/// Symbolic verification of the p-th-iterate congruences: the generic series
/// with indeterminate coefficients is composed with itself p times over
/// F_p[x_0, x_1, ...] and the resulting coefficients are compared with their
/// closed forms as polynomial identities.

#include <cstdint>
#include <vector>

#include "wildram/mpoly.hpp"
#include "wildram/wild.hpp"

namespace wildram {

/// Which generic family to build. Both start z(1 + x_0 z^q + x_1 z^{q+l});
/// they differ in where the unconstrained tail begins:
///   two_term      tail x_{i+1} z^{q+2l+i}, i >= 1 (two tracked result terms)
///   leading_term  tail x_{i+1} z^{q+l+p+i}, i >= 1 (one tracked result term)
enum class GenericShape { two_term, leading_term };

struct GenericSeries {
    uint32_t p = 0;
    int64_t q = 0, ell = 0;
    GenericShape shape = GenericShape::two_term;
    int tail_vars = 0; // number of tail variables x_2.. actually created
    TruncatedSeries<MPoly> series{std::vector<MPoly>{MPoly(3)}};
};

inline GenericSeries build_generic(uint32_t p, int64_t q, int64_t ell, GenericShape shape,
                                   int prec) {
    if (p == 2) throw PreconditionViolation("generic verification is for odd p");
    if (q < 1 || q % p == 0) throw PreconditionViolation("need q >= 1 with p !| q");
    if (ell < 0 || (ell - q) % p != 0)
        throw PreconditionViolation("need l = q mod p");
    if (prec < q + 1) throw PreconditionViolation("need prec >= q+1");

    MPoly z0(p);
    auto s = TruncatedSeries<MPoly>::zeros(z0, prec);
    s.set_coeff(1, MPoly::constant(Fp(1, p)));
    // Indices 0 and 1 are reserved for the two named coefficients even when
    // the precision cuts the second one off; tail variables start at 2.
    s.set_coeff(static_cast<int>(q) + 1, MPoly::variable(0, p));
    if (q + ell + 1 <= prec)
        s.set_coeff(static_cast<int>(q + ell) + 1, MPoly::variable(1, p));
    uint32_t next_var = 2;
    const int64_t tail0 =
        shape == GenericShape::two_term ? q + 2 * ell + 2 : q + ell + p + 2;
    int tail = 0;
    for (int64_t d = tail0; d <= prec; ++d) {
        s.set_coeff(static_cast<int>(d), MPoly::variable(next_var++, p));
        ++tail;
    }
    return {p, q, ell, shape, tail, std::move(s)};
}

/// f^p by p-1 sequential compositions g <- g o f. The inner factor stays the
/// sparse generic series, which keeps the coefficient polynomials small.
inline TruncatedSeries<MPoly> pth_iterate_generic(const TruncatedSeries<MPoly>& f, uint32_t p) {
    auto g = f;
    for (uint32_t i = 1; i < p; ++i) g = series_compose(g, f);
    return g;
}

struct CongruenceReport {
    bool pass = true;
    MPoly beta, gamma;              // observed tracked coefficients
    MPoly beta_want, gamma_want;    // closed forms
    int first_bad_degree = -1;      // first unexpected nonzero coefficient
    MPoly first_bad_coeff;
};

/// Two-term congruence: for the two_term shape (hypotheses p !| q, q >= p+1,
/// l >= 1, l = q mod p, and l <= p-1 or 2l+1 <= q),
///   f^p = z (1 + beta z^{qp+l} + gamma z^{qp+2l})   mod z^{qp+2l+2}
/// with beta = -x_0^{p-1} x_1 and gamma = -x_0^{p-2} x_1^2.
inline CongruenceReport verify_iterate_two_term(uint32_t p, int64_t q, int64_t ell) {
    if (q < p + 1) throw PreconditionViolation("need q >= p+1");
    if (ell < 1) throw PreconditionViolation("need l >= 1");
    if (!(ell <= p - 1 || 2 * ell + 1 <= q))
        throw PreconditionViolation("need l <= p-1 or 2l+1 <= q");
    const int prec = static_cast<int>(q * p + 2 * ell + 1);
    auto gen = build_generic(p, q, ell, GenericShape::two_term, prec);
    auto fp = pth_iterate_generic(gen.series, p);

    CongruenceReport rep;
    MPoly x0 = MPoly::variable(0, p), x1 = MPoly::variable(1, p);
    rep.beta_want = -(x0.pow(p - 1) * x1);
    rep.gamma_want = -(x0.pow(p - 2) * (x1 * x1));
    const int beta_at = static_cast<int>(q * p + ell) + 1;
    const int gamma_at = static_cast<int>(q * p + 2 * ell) + 1;
    for (int d = 0; d <= prec; ++d) {
        const MPoly& c = fp.coeff(d);
        if (d == 1) {
            if (!(c == MPoly::constant(Fp(1, p)))) rep.pass = false;
        } else if (d == beta_at) {
            rep.beta = c;
            if (!(c == rep.beta_want)) rep.pass = false;
        } else if (d == gamma_at) {
            rep.gamma = c;
            if (!(c == rep.gamma_want)) rep.pass = false;
        } else if (!c.is_zero()) {
            rep.pass = false;
            if (rep.first_bad_degree < 0) {
                rep.first_bad_degree = d;
                rep.first_bad_coeff = c;
            }
        }
    }
    return rep;
}

/// Leading-term congruence: for the leading_term shape with l_j in Lambda,
///   f^p - z = beta z^{qp+l_j+1}   mod z^{qp+l_j+2}
/// with beta = -x_0^{p-1} x_1 when l_j < q, and
/// beta = x_0^{p-1} (x_0^2 (q+1)/2 - x_1) when l_j = q.
inline CongruenceReport verify_iterate_leading(uint32_t p, int64_t q, int64_t ell_j) {
    if (q < p + 1) throw PreconditionViolation("need q >= p+1");
    if (ell_j < 1 || ell_j > q) throw PreconditionViolation("need l_j in Lambda, l_j >= 1");
    const int prec = static_cast<int>(q * p + ell_j) + 1;
    auto gen = build_generic(p, q, ell_j, GenericShape::leading_term, prec);
    auto fp = pth_iterate_generic(gen.series, p);

    CongruenceReport rep;
    MPoly x0 = MPoly::variable(0, p), x1 = MPoly::variable(1, p);
    if (ell_j < q) {
        rep.beta_want = -(x0.pow(p - 1) * x1);
    } else {
        Fp half_q1 = Fp::from_int(q + 1, p) * Fp(2, p).inverse();
        rep.beta_want = x0.pow(p - 1) * ((x0 * x0).scale(half_q1) - x1);
    }
    const int beta_at = prec;
    for (int d = 0; d <= prec; ++d) {
        const MPoly& c = fp.coeff(d);
        if (d == 1) {
            if (!(c == MPoly::constant(Fp(1, p)))) rep.pass = false;
        } else if (d == beta_at) {
            rep.beta = c;
            if (!(c == rep.beta_want)) rep.pass = false;
        } else if (!c.is_zero()) {
            rep.pass = false;
            if (rep.first_bad_degree < 0) {
                rep.first_bad_degree = d;
                rep.first_bad_coeff = c;
            }
        }
    }
    return rep;
}

struct RecurrenceRow {
    int m = 0;
    MPoly alpha, beta;
};

struct RecurrenceReport {
    std::vector<RecurrenceRow> rows;     // m = 1..m_max
    bool closed_forms_ok = true;         // against the product/sum formulas
    bool delta_claims_ok = true;         // against Delta_m of the generic series
    bool alpha_p_zero = false;           // alpha_p = 0 (only set when m_max >= p)
    bool beta_p_ok = false;              // beta_p = -x_0^{p-1} x_1
};

/// Tracked coefficients of Delta_m for the leading_term shape with l_j < q:
///   Delta_m = alpha_m z^{qm+1} + beta_m z^{qm+l_j+1}   mod z^{qm+l_j+2},
/// driven by alpha_{m+1} = x_0 (qm+1) alpha_m and
/// beta_{m+1} = x_1 (qm+1) alpha_m + x_0 (qm+l_j+1) beta_m, from alpha_1 = x_0,
/// beta_1 = x_1. Closed forms: alpha_m = x_0^m prod_{j<m} (qj+1) and
/// beta_m = x_0^{m-1} x_1 sum_r prod_{j != r} (lj+1) with l = q mod p.
inline RecurrenceReport iterate_coefficient_recurrences(uint32_t p, int64_t q, int64_t ell_j,
                                                        int m_max) {
    if (p == 2) throw PreconditionViolation("recurrences are for odd p");
    if (q < 1 || q % p == 0 || ell_j < 1 || ell_j >= q || (ell_j - q) % p != 0)
        throw PreconditionViolation("need l_j in Lambda with l_j < q");
    if (m_max < 1) throw PreconditionViolation("need m_max >= 1");

    MPoly x0 = MPoly::variable(0, p), x1 = MPoly::variable(1, p);
    RecurrenceReport rep;
    MPoly alpha = x0, beta = x1;
    for (int m = 1; m <= m_max; ++m) {
        if (m > 1) {
            int64_t qm = q * (m - 1);
            MPoly a_next = (x0 * alpha).scaled_by_int(qm + 1);
            MPoly b_next =
                (x1 * alpha).scaled_by_int(qm + 1) + (x0 * beta).scaled_by_int(qm + ell_j + 1);
            alpha = std::move(a_next);
            beta = std::move(b_next);
        }
        rep.rows.push_back({m, alpha, beta});

        // Closed forms, everything mod p.
        const int64_t l = q % p;
        Fp prod(1, p);
        for (int64_t jj = 1; jj <= m - 1; ++jj) prod *= Fp::from_int(q * jj + 1, p);
        if (!(alpha == x0.pow(static_cast<uint32_t>(m)).scale(prod)))
            rep.closed_forms_ok = false;
        Fp acc(0, p);
        for (int64_t r = 1; r <= m; ++r) {
            Fp term(1, p);
            for (int64_t jj = 1; jj <= m; ++jj)
                if (jj != r) term *= Fp::from_int(l * jj + 1, p);
            acc += term;
        }
        if (!(beta == (x0.pow(static_cast<uint32_t>(m) - 1) * x1).scale(acc)))
            rep.closed_forms_ok = false;
    }

    // Compare with the actual difference operator on the generic series.
    const int prec = static_cast<int>(q * m_max + ell_j) + 1;
    auto gen = build_generic(p, q, ell_j, GenericShape::leading_term, prec);
    WildSeries<MPoly> fhat(gen.series);
    auto d = TruncatedSeries<MPoly>::identity(MPoly(p), prec);
    for (int m = 1; m <= m_max; ++m) {
        d = series_sub(series_compose(d, fhat.series()), d);
        const int a_at = static_cast<int>(q) * m + 1;
        const int b_at = static_cast<int>(q * m + ell_j) + 1;
        for (int k = 0; k <= b_at; ++k) {
            const MPoly& c = d.coeff(k);
            if (k == a_at) {
                if (!(c == rep.rows[static_cast<size_t>(m) - 1].alpha))
                    rep.delta_claims_ok = false;
            } else if (k == b_at) {
                if (!(c == rep.rows[static_cast<size_t>(m) - 1].beta))
                    rep.delta_claims_ok = false;
            } else if (!c.is_zero()) {
                rep.delta_claims_ok = false;
            }
        }
    }

    if (m_max >= static_cast<int>(p)) {
        const auto& row = rep.rows[static_cast<size_t>(p) - 1];
        rep.alpha_p_zero = row.alpha.is_zero();
        rep.beta_p_ok = row.beta == -(x0.pow(p - 1) * x1);
    }
    return rep;
}

} // namespace wildram
