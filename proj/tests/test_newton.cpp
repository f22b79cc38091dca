#include "doctest.h"

#include "wildram/newton.hpp"
#include "wildram/rng.hpp"

using namespace wildram;

namespace {

RationalFunction rf(const FpPoly& n) { return RationalFunction::from_poly(n); }

RationalFunction tpow(uint32_t p, int k) { return rf(FpPoly::t_power(p, k)); }

ValuedPoly from_valuations(uint32_t p, const std::vector<int64_t>& vals) {
    // coefficient t^{vals[k]} at z^k, or zero for negative sentinels
    ValuedPoly f(p);
    for (size_t k = 0; k < vals.size(); ++k)
        if (vals[k] >= 0) f.set_coeff(static_cast<int64_t>(k), tpow(p, static_cast<int>(vals[k])));
    return f;
}

} // namespace

TEST_CASE("ratio normalization and order") {
    CHECK(Ratio(2, 4) == Ratio(1, 2));
    CHECK(Ratio(1, -2) == Ratio(-1, 2));
    CHECK(Ratio(0, 7) == Ratio::from_int(0));
    CHECK(Ratio(1, 3) < Ratio(1, 2));
    CHECK(Ratio(-2, 1) < Ratio(-1, 3));
    CHECK(Ratio(1, 3) <= Ratio(2, 6));
}

TEST_CASE("valued polynomial arithmetic") {
    uint32_t p = 3;
    auto z = ValuedPoly::identity_z(p);
    auto z2 = poly_mul(z, z);
    auto f = poly_add(z, z2);            // z + z^2
    auto g = poly_add(z, poly_mul(z2, z)); // z + z^3
    auto comp = poly_compose(f, g);
    // (z + z^3) + (z + z^3)^2 = z + z^2 + z^3 + 2 z^4 + z^6
    CHECK(comp.coeff(1) == RationalFunction::constant(Fp(1, p)));
    CHECK(comp.coeff(2) == RationalFunction::constant(Fp(1, p)));
    CHECK(comp.coeff(3) == RationalFunction::constant(Fp(1, p)));
    CHECK(comp.coeff(4) == RationalFunction::constant(Fp(2, p)));
    CHECK(comp.coeff(5).is_zero());
    CHECK(comp.coeff(6) == RationalFunction::constant(Fp(1, p)));
    CHECK(comp.degree() == 6);
    CHECK(poly_sub(comp, comp).is_zero());
    CHECK(poly_compose(f, z) == f);
    CHECK(f.ord() == 1);
    CHECK(f.shifted_down(1).coeff(0) == RationalFunction::constant(Fp(1, p)));
}

TEST_CASE("newton polygon of explicit points") {
    // t^2 + z + t z^3: points (0,2), (1,0), (3,1)
    ValuedPoly f(3);
    f.set_coeff(0, tpow(3, 2));
    f.set_coeff(1, RationalFunction::constant(Fp(1, 3)));
    f.set_coeff(3, tpow(3, 1));
    auto np = newton_polygon(f);
    REQUIRE(np.vertices.size() == 3);
    CHECK(np.vertices[0] == std::pair<int64_t, int64_t>{0, 2});
    CHECK(np.vertices[1] == std::pair<int64_t, int64_t>{1, 0});
    CHECK(np.vertices[2] == std::pair<int64_t, int64_t>{3, 1});
    REQUIRE(np.segments.size() == 2);
    CHECK(np.segments[0].slope == Ratio(-2, 1));
    CHECK(np.segments[0].length == 1);
    CHECK(np.segments[1].slope == Ratio(1, 2));
    CHECK(np.segments[1].length == 2);
    CHECK(np.zero_root_multiplicity == 0);
    auto roots = positive_root_valuations(np);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].valuation == Ratio(2, 1));
    CHECK(roots[0].multiplicity == 1);
}

TEST_CASE("collinear points collapse into one segment") {
    auto np = newton_polygon(from_valuations(3, {0, 1, 2}));
    REQUIRE(np.vertices.size() == 2);
    CHECK(np.vertices[0] == std::pair<int64_t, int64_t>{0, 0});
    CHECK(np.vertices[1] == std::pair<int64_t, int64_t>{2, 2});
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == Ratio(1, 1));
    CHECK(np.segments[0].length == 2);
    CHECK_THROWS_AS(newton_polygon(ValuedPoly(3)), ZeroValuation);
}

TEST_CASE("polygon invariants on random inputs") {
    SplitMix64 rng(73);
    for (int rep = 0; rep < 30; ++rep) {
        ValuedPoly f(3);
        bool any = false;
        for (int64_t k = 0; k <= 8; ++k) {
            if (rng.below(3) == 0) continue;
            f.set_coeff(k, tpow(3, static_cast<int>(rng.below(5))));
            any = true;
        }
        if (!any) f.set_coeff(2, tpow(3, 1));
        auto np = newton_polygon(f);
        int64_t span = 0;
        for (const auto& s : np.segments) span += s.length;
        CHECK(np.zero_root_multiplicity == f.ord());
        CHECK(np.zero_root_multiplicity + span == f.degree());
        for (size_t i = 1; i < np.segments.size(); ++i)
            CHECK(np.segments[i - 1].slope < np.segments[i].slope);

        // the x coordinate of the leftmost valuation-zero vertex is the
        // z-order of the reduction at t = 0
        int64_t wdeg = np.zero_root_multiplicity;
        for (const auto& s : np.segments)
            if (s.slope < Ratio::from_int(0)) wdeg += s.length;
        int64_t red_ord = -1;
        for (int64_t k = f.ord(); k <= f.degree(); ++k) {
            const auto& c = f.coeff(k);
            if (!c.is_zero() && rat_valuation(c) == 0) { red_ord = k; break; }
        }
        if (red_ord >= 0) CHECK(wdeg == red_ord);
    }
}

TEST_CASE("exact division of valued polynomials") {
    uint32_t p = 3;
    SplitMix64 rng(79);
    for (int rep = 0; rep < 20; ++rep) {
        ValuedPoly b(p), c(p);
        for (int64_t k = 0; k <= 3; ++k) {
            if (rng.below(2)) b.set_coeff(k, tpow(p, static_cast<int>(rng.below(3))));
            if (rng.below(2)) c.set_coeff(k, tpow(p, static_cast<int>(rng.below(3))));
        }
        if (b.is_zero()) b.set_coeff(1, tpow(p, 0));
        if (c.is_zero()) c.set_coeff(0, tpow(p, 1));
        auto a = poly_mul(b, c);
        CHECK(divide_exact(a, b) == c);
    }
    auto z = ValuedPoly::identity_z(p);
    CHECK_THROWS_AS(divide_exact(z, poly_mul(z, z)), DivisionFailure);
    ValuedPoly rem(p);
    rem.set_coeff(0, tpow(p, 0));
    rem.set_coeff(1, tpow(p, 0));
    CHECK_THROWS_AS(divide_exact(rem, poly_add(z, rem)), DivisionFailure);
    CHECK_THROWS_AS(divide_exact(z, ValuedPoly(p)), ZeroInverse);
}

TEST_CASE("fixed point valuation bounds") {
    // f = z + t z^5 + z^6 over F_3(t)
    ValuedPoly f(3);
    f.set_coeff(1, RationalFunction::constant(Fp(1, 3)));
    f.set_coeff(5, tpow(3, 1));
    f.set_coeff(6, tpow(3, 0));
    auto rep = fixed_point_valuations(f);
    CHECK(rep.q == 4);
    CHECK(rep.v_a == 1);
    REQUIRE(rep.roots.size() == 1);
    CHECK(rep.roots[0].valuation == Ratio(1, 1));
    CHECK(rep.roots[0].multiplicity == 1);
    CHECK(rep.pass);
}

TEST_CASE("periodic point valuation bounds") {
    ValuedPoly f(3);
    f.set_coeff(1, RationalFunction::constant(Fp(1, 3)));
    f.set_coeff(5, tpow(3, 1));
    f.set_coeff(6, tpow(3, 0));
    auto rep = periodic_point_bound(f);
    CHECK(rep.q == 4);
    CHECK(rep.i1 == 13);
    CHECK(rep.pind1 == RationalFunction(FpPoly::constant(Fp(1, 3)), FpPoly::t_power(3, 2)));
    CHECK(rep.v_a == 1);
    CHECK(rep.v_pind == -2);
    CHECK(rep.bound == Ratio(1, 3));
    CHECK(rep.polygon.zero_root_multiplicity == 9);
    CHECK(rep.pass);
    CHECK(rep.delta_applicable);
    CHECK(rep.delta_ok);
}

TEST_CASE("degenerate inputs are rejected") {
    uint32_t p = 3;
    ValuedPoly notseries(p);
    notseries.set_coeff(2, tpow(p, 0)); // f'(0) = 0
    CHECK_THROWS_AS(fixed_point_valuations(notseries), ShapeViolation);

    ValuedPoly neg(p);
    neg.set_coeff(1, RationalFunction::constant(Fp(1, p)));
    neg.set_coeff(2, RationalFunction(FpPoly::constant(Fp(1, p)), FpPoly::t_power(p, 1)));
    CHECK_THROWS_AS(fixed_point_valuations(neg), ShapeViolation);

    ValuedPoly vanishing(p);
    vanishing.set_coeff(1, RationalFunction::constant(Fp(1, p)));
    vanishing.set_coeff(5, tpow(p, 1)); // pind_1 = 0 since a_5 coefficient of z^6 is absent
    CHECK_THROWS_AS(periodic_point_bound(vanishing), IndexVanishes);

    ValuedPoly smallq(p);
    smallq.set_coeff(1, RationalFunction::constant(Fp(1, p)));
    smallq.set_coeff(4, tpow(p, 1)); // q = 3 divisible by p
    CHECK_THROWS_AS(periodic_point_bound(smallq), PreconditionViolation);
}
