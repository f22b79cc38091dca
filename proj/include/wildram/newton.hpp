#pragma once

/// Newton polygons for polynomials over F_p(t) and the valuation bounds they
/// give on fixed and periodic points of series z + a z^{q+1} + ... whose
/// coefficients carry a t-adic valuation.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "wildram/fp_poly.hpp"
#include "wildram/indices.hpp"
#include "wildram/series.hpp"

namespace wildram {

/// Exact rational with a 64-bit numerator and positive denominator.
struct Ratio {
    int64_t num = 0;
    int64_t den = 1;

    Ratio() = default;
    Ratio(int64_t n, int64_t d) : num(n), den(d) {
        if (den == 0) throw PreconditionViolation("ratio with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    static Ratio from_int(int64_t n) { return Ratio(n, 1); }

    bool operator==(const Ratio& o) const {
        return static_cast<__int128>(num) * o.den == static_cast<__int128>(o.num) * den;
    }
    bool operator<(const Ratio& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Ratio& o) const { return *this < o || *this == o; }
};

struct NewtonSegment {
    Ratio slope;
    int64_t length = 0; // horizontal run, = number of roots with valuation -slope
};

struct NewtonPolygon {
    std::vector<std::pair<int64_t, int64_t>> vertices; // (degree, valuation)
    std::vector<NewtonSegment> segments;
    int64_t zero_root_multiplicity = 0;
};

/// Polynomial in z with F_p(t) coefficients, trailing zeros trimmed.
class ValuedPoly {
public:
    explicit ValuedPoly(uint32_t p) : p_(p) {}
    ValuedPoly(uint32_t p, std::vector<RationalFunction> coeffs)
        : p_(p), c_(std::move(coeffs)) {
        trim();
    }

    static ValuedPoly identity_z(uint32_t p) {
        ValuedPoly r(p);
        r.set_coeff(1, RationalFunction::constant(Fp(1, p)));
        return r;
    }

    uint32_t modulus() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int64_t degree() const { return static_cast<int64_t>(c_.size()) - 1; }
    int64_t ord() const {
        for (size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) return static_cast<int64_t>(k);
        throw ZeroValuation("ord of zero polynomial");
    }
    RationalFunction coeff(int64_t k) const {
        if (k < 0 || k >= static_cast<int64_t>(c_.size()))
            return RationalFunction::constant(Fp(0, p_));
        return c_[static_cast<size_t>(k)];
    }
    void set_coeff(int64_t k, RationalFunction v) {
        if (k < 0) throw PreconditionViolation("negative degree");
        if (k >= static_cast<int64_t>(c_.size()))
            c_.resize(static_cast<size_t>(k) + 1, RationalFunction::constant(Fp(0, p_)));
        c_[static_cast<size_t>(k)] = std::move(v);
        trim();
    }
    ValuedPoly shifted_down(int64_t k) const {
        if (is_zero()) return *this;
        if (ord() < k) throw PreconditionViolation("shift drops a nonzero term");
        std::vector<RationalFunction> v(c_.begin() + static_cast<int64_t>(k), c_.end());
        return ValuedPoly(p_, std::move(v));
    }
    bool operator==(const ValuedPoly& o) const {
        if (p_ != o.p_) return false;
        if (c_.size() != o.c_.size()) return false;
        for (size_t k = 0; k < c_.size(); ++k)
            if (!(c_[k] == o.c_[k])) return false;
        return true;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    uint32_t p_ = 2;
    std::vector<RationalFunction> c_;
};

inline ValuedPoly poly_add(const ValuedPoly& a, const ValuedPoly& b) {
    if (a.modulus() != b.modulus()) throw RingMismatch("polynomial moduli differ");
    ValuedPoly r(a.modulus());
    int64_t d = std::max(a.degree(), b.degree());
    for (int64_t k = d; k >= 0; --k) r.set_coeff(k, a.coeff(k) + b.coeff(k));
    return r;
}

inline ValuedPoly poly_sub(const ValuedPoly& a, const ValuedPoly& b) {
    if (a.modulus() != b.modulus()) throw RingMismatch("polynomial moduli differ");
    ValuedPoly r(a.modulus());
    int64_t d = std::max(a.degree(), b.degree());
    for (int64_t k = d; k >= 0; --k) r.set_coeff(k, a.coeff(k) - b.coeff(k));
    return r;
}

inline ValuedPoly poly_mul(const ValuedPoly& a, const ValuedPoly& b) {
    if (a.modulus() != b.modulus()) throw RingMismatch("polynomial moduli differ");
    ValuedPoly r(a.modulus());
    if (a.is_zero() || b.is_zero()) return r;
    std::vector<RationalFunction> acc(
        static_cast<size_t>(a.degree() + b.degree()) + 1,
        RationalFunction::constant(Fp(0, a.modulus())));
    for (int64_t i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i).is_zero()) continue;
        for (int64_t j = 0; j <= b.degree(); ++j) {
            if (b.coeff(j).is_zero()) continue;
            acc[static_cast<size_t>(i + j)] =
                acc[static_cast<size_t>(i + j)] + a.coeff(i) * b.coeff(j);
        }
    }
    return ValuedPoly(a.modulus(), std::move(acc));
}

/// outer(inner), exact (no truncation), by Horner from the top coefficient.
inline ValuedPoly poly_compose(const ValuedPoly& outer, const ValuedPoly& inner) {
    if (outer.modulus() != inner.modulus()) throw RingMismatch("polynomial moduli differ");
    ValuedPoly acc(outer.modulus());
    for (int64_t k = outer.degree(); k >= 0; --k) {
        acc = poly_mul(acc, inner);
        if (!outer.coeff(k).is_zero()) {
            ValuedPoly ck(outer.modulus());
            ck.set_coeff(0, outer.coeff(k));
            acc = poly_add(acc, ck);
        }
    }
    return acc;
}

/// Lower convex hull of the points (i, v(c_i)) over nonzero coefficients,
/// by monotone chain with exact integer cross products. Vertices appear only
/// where the slope changes; segment slopes increase strictly left to right.
inline NewtonPolygon newton_polygon(const ValuedPoly& f) {
    if (f.is_zero()) throw ZeroValuation("newton polygon of zero polynomial");
    std::vector<std::pair<int64_t, int64_t>> pts;
    for (int64_t k = 0; k <= f.degree(); ++k) {
        if (f.coeff(k).is_zero()) continue;
        pts.emplace_back(k, rat_valuation(f.coeff(k)));
    }
    NewtonPolygon np;
    np.zero_root_multiplicity = pts.front().first;
    auto cross = [](const std::pair<int64_t, int64_t>& o, const std::pair<int64_t, int64_t>& a,
                    const std::pair<int64_t, int64_t>& b) {
        return static_cast<__int128>(a.first - o.first) * (b.second - o.second) -
               static_cast<__int128>(a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<int64_t, int64_t>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0)
            hull.pop_back();
        hull.push_back(pt);
    }
    np.vertices = hull;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        NewtonSegment seg;
        seg.length = hull[k + 1].first - hull[k].first;
        seg.slope = Ratio(hull[k + 1].second - hull[k].second, seg.length);
        np.segments.push_back(seg);
    }
    return np;
}

/// Exact quotient a / b in F_p(t)[z]; throws DivisionFailure when b does not
/// divide a. Division runs bottom-up after shifting out the common z-power,
/// and the quotient is verified by multiplying back.
inline ValuedPoly divide_exact(const ValuedPoly& a, const ValuedPoly& b) {
    if (b.is_zero()) throw ZeroInverse("division by zero polynomial");
    ValuedPoly q(a.modulus());
    if (a.is_zero()) return q;
    const int64_t bo = b.ord();
    if (a.ord() < bo) throw DivisionFailure("dividend order below divisor order");
    ValuedPoly an = a.shifted_down(bo), bn = b.shifted_down(bo);
    const RationalFunction lead = bn.coeff(0).inverse();
    const int64_t dq = an.degree() - bn.degree();
    if (dq < 0) throw DivisionFailure("dividend degree below divisor degree");

    std::vector<RationalFunction> rem(static_cast<size_t>(an.degree()) + 1,
                                      RationalFunction::constant(Fp(0, a.modulus())));
    for (int64_t k = 0; k <= an.degree(); ++k) rem[static_cast<size_t>(k)] = an.coeff(k);
    for (int64_t k = 0; k <= dq; ++k) {
        RationalFunction qk = (rem[static_cast<size_t>(k)] * lead).reduced();
        q.set_coeff(k, qk);
        if (qk.is_zero()) continue;
        for (int64_t j = 0; j <= bn.degree(); ++j) {
            size_t at = static_cast<size_t>(k + j);
            rem[at] = (rem[at] - qk * bn.coeff(j)).reduced();
        }
    }
    for (const auto& c : rem)
        if (!c.is_zero()) throw DivisionFailure("nonzero remainder");
    if (!(poly_mul(q, b) == a)) throw DivisionFailure("verification product mismatch");
    return q;
}

struct RootValuation {
    Ratio valuation;
    int64_t multiplicity = 0;
};

/// Positive root valuations (-slope over negative-slope segments).
inline std::vector<RootValuation> positive_root_valuations(const NewtonPolygon& np) {
    std::vector<RootValuation> out;
    for (const auto& seg : np.segments)
        if (seg.slope < Ratio::from_int(0))
            out.push_back({Ratio(-seg.slope.num, seg.slope.den), seg.length});
    return out;
}

struct FixedPointReport {
    int64_t q = 0;
    int64_t v_a = 0;                    // valuation of the z^{q+1} coefficient
    NewtonPolygon polygon;              // of (f - z) / z^{q+1}
    std::vector<RootValuation> roots;   // positive valuations with multiplicity
    bool pass = false;                  // every positive valuation <= v_a
};

namespace detail {

inline void check_valued_shape(const ValuedPoly& f) {
    if (!f.coeff(0).is_zero()) throw ShapeViolation("constant term must vanish");
    if (!f.coeff(1).is_unit() ||
        !(f.coeff(1) == RationalFunction::constant(Fp(1, f.modulus()))))
        throw ShapeViolation("linear coefficient must be 1");
    for (int64_t k = 2; k <= f.degree(); ++k)
        if (!f.coeff(k).is_zero() && rat_valuation(f.coeff(k)) < 0)
            throw ShapeViolation("coefficient with negative valuation");
    if (f.degree() < 2) throw ShapeViolation("series must differ from z");
}

} // namespace detail

/// Nonzero fixed points of f are the roots of (f - z) / z^{q+1}; each root
/// with positive valuation satisfies v(root) <= v(a).
inline FixedPointReport fixed_point_valuations(const ValuedPoly& f) {
    detail::check_valued_shape(f);
    ValuedPoly num = poly_sub(f, ValuedPoly::identity_z(f.modulus()));
    FixedPointReport rep;
    rep.q = num.ord() - 1;
    rep.v_a = rat_valuation(num.coeff(rep.q + 1));
    rep.polygon = newton_polygon(num.shifted_down(rep.q + 1));
    rep.roots = positive_root_valuations(rep.polygon);
    rep.pass = true;
    for (const auto& r : rep.roots)
        if (!(r.valuation <= Ratio::from_int(rep.v_a))) rep.pass = false;
    return rep;
}

struct PeriodicPointReport {
    int64_t q = 0;
    int64_t i1 = 0;                     // z-order of f^p - z, minus 1
    RationalFunction pind1;             // first residue index over F_p(t)
    int64_t v_a = 0;
    int64_t v_pind = 0;
    Ratio bound;                        // v(a) + v(pind_1)/p
    NewtonPolygon polygon;              // of (f^p - z) / (f - z)
    std::vector<RootValuation> roots;
    bool pass = false;                  // every positive valuation <= bound
    bool delta_applicable = false;      // i1 == qp + l_1
    bool delta_ok = false;              // v(d_1) - v(d_0) == p v(a) + v(pind_1)
};

/// Periodic points of exact period p are roots of (f^p - z)/(f - z); when the
/// first residue index does not vanish, every root with positive valuation
/// satisfies v(root) <= v(a) + v(pind_1)/p.
inline PeriodicPointReport periodic_point_bound(const ValuedPoly& f) {
    detail::check_valued_shape(f);
    const uint32_t p = f.modulus();
    if (p == 2) throw PreconditionViolation("bound needs odd p");
    ValuedPoly fz = poly_sub(f, ValuedPoly::identity_z(p));
    PeriodicPointReport rep;
    rep.q = fz.ord() - 1;
    if (rep.q % p == 0) throw PreconditionViolation("need p !| q");
    if (rep.q < p + 1) throw PreconditionViolation("need q >= p+1");
    rep.v_a = rat_valuation(fz.coeff(rep.q + 1));

    const int64_t ell1 = rep.q % p;
    const int prec = static_cast<int>(rep.q + ell1) + 1;
    auto s = TruncatedSeries<RationalFunction>::identity(RationalFunction::constant(Fp(0, p)),
                                                         prec);
    for (int64_t k = 2; k <= std::min<int64_t>(f.degree(), prec); ++k)
        s.set_coeff(static_cast<int>(k), f.coeff(k));
    WildSeries<RationalFunction> w(std::move(s));
    rep.pind1 = partial_index_closed(w, 1).reduced();
    if (rep.pind1.is_zero()) throw IndexVanishes("first residue index vanishes");
    rep.v_pind = rat_valuation(rep.pind1);
    rep.bound = Ratio(static_cast<int64_t>(p) * rep.v_a + rep.v_pind, p);

    ValuedPoly fp = f;
    for (uint32_t k = 1; k < p; ++k) fp = poly_compose(fp, f);
    ValuedPoly fpz = poly_sub(fp, ValuedPoly::identity_z(p));
    rep.i1 = fpz.ord() - 1;
    ValuedPoly quot = divide_exact(fpz, fz);
    rep.polygon = newton_polygon(quot);
    rep.roots = positive_root_valuations(rep.polygon);
    rep.pass = true;
    for (const auto& r : rep.roots)
        if (!(r.valuation <= rep.bound)) rep.pass = false;

    if (rep.i1 == rep.q * static_cast<int64_t>(p) + ell1) {
        rep.delta_applicable = true;
        int64_t lhs = rat_valuation(fpz.coeff(rep.i1 + 1)) - rep.v_a;
        rep.delta_ok = lhs == static_cast<int64_t>(p) * rep.v_a + rep.v_pind;
    }
    return rep;
}

} // namespace wildram
