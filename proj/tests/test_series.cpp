#include "doctest.h"

#include "helpers.hpp"
#include "wildram/series.hpp"

using namespace wildram;
using testutil::fp_series;

TEST_CASE("series construction and access") {
    auto s = fp_series(3, {0, 1, 0, 2});
    CHECK(s.prec() == 3);
    CHECK(s.coeff(3) == Fp(2, 3));
    CHECK(TruncatedSeries<Fp>::identity(Fp(0, 3), 4) == fp_series(3, {0, 1, 0, 0, 0}));
    CHECK(TruncatedSeries<Fp>::constant(Fp(2, 3), 2) == fp_series(3, {2, 0, 0}));
    CHECK_THROWS_AS(TruncatedSeries<Fp>(std::vector<Fp>{}), InvariantViolation);
}

TEST_CASE("truncate and pad") {
    auto s = fp_series(5, {0, 1, 2, 3});
    CHECK(s.truncated(1) == fp_series(5, {0, 1}));
    CHECK(s.padded(5) == fp_series(5, {0, 1, 2, 3, 0, 0}));
    CHECK_THROWS_AS(s.truncated(4), InsufficientPrecision);
}

TEST_CASE("ring arithmetic on series") {
    auto a = fp_series(3, {1, 1, 0, 0});
    auto b = fp_series(3, {1, 2, 0, 0}); // 1 - z
    CHECK(series_mul(a, b) == fp_series(3, {1, 0, 2, 0}));
    CHECK(series_add(a, b) == fp_series(3, {2, 0, 0, 0}));
    CHECK(series_sub(a, a) == fp_series(3, {0, 0, 0, 0}));
    CHECK(series_scale(a, Fp(2, 3)) == fp_series(3, {2, 2, 0, 0}));
    // products truncate to the shorter operand
    CHECK(series_mul(a, fp_series(3, {1, 1})).prec() == 1);
    CHECK_THROWS_AS(series_add(a, fp_series(5, {1, 1})), RingMismatch);
}

TEST_CASE("composition") {
    auto f = fp_series(7, {2, 3, 1, 0, 0, 0});
    auto id = TruncatedSeries<Fp>::identity(Fp(0, 7), 5);
    CHECK(series_compose(f, id) == f);
    auto g = fp_series(7, {0, 1, 1, 0, 0, 0});
    // (2 + 3w + w^2) at w = z + z^2
    CHECK(series_compose(f, g) == fp_series(7, {2, 3, 4, 2, 1, 0}));
    CHECK_THROWS_AS(series_compose(f, fp_series(7, {1, 1})), NonzeroConstant);
}

TEST_CASE("reciprocal") {
    SplitMix64 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Fp> v{Fp(1 + rng.below(4), 5)};
        for (int k = 1; k <= 8; ++k) v.push_back(Fp(rng.below(5), 5));
        TruncatedSeries<Fp> u(v);
        auto one = TruncatedSeries<Fp>::constant(Fp(1, 5), 8);
        CHECK(series_mul(u, series_reciprocal(u)) == one);
    }
    CHECK_THROWS_AS(series_reciprocal(fp_series(5, {0, 1})), NonUnitConstant);
}

TEST_CASE("derivative and order") {
    CHECK(series_derivative(fp_series(5, {0, 0, 0, 1})) == fp_series(5, {0, 0, 3}));
    CHECK(series_derivative(fp_series(3, {0, 0, 0, 1})) == fp_series(3, {0, 0, 0}));
    CHECK(series_order(fp_series(3, {0, 0, 1, 2})) == OrderBound::finite(2));
    CHECK(series_order(fp_series(3, {0, 0, 0, 0})) == OrderBound::at_least(4));
    CHECK(series_order(fp_series(3, {0, 0, 0, 0})).is_finite() == false);
}

TEST_CASE("shift down is exact division by z^k") {
    auto s = fp_series(3, {0, 0, 0, 1, 0, 1});
    CHECK(series_shift_down(s, 3) == fp_series(3, {1, 0, 1}));
    CHECK_THROWS_AS(series_shift_down(s, 4), InvariantViolation);
}

TEST_CASE("powers by repeated squaring") {
    SplitMix64 rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Fp> v{Fp(1 + rng.below(2), 3)};
        for (int k = 1; k <= 7; ++k) v.push_back(Fp(rng.below(3), 3));
        TruncatedSeries<Fp> u(v);
        auto by_mul = TruncatedSeries<Fp>::constant(Fp(1, 3), 7);
        for (int i = 0; i < 5; ++i) by_mul = series_mul(by_mul, u);
        CHECK(series_pow(u, 5) == by_mul);
        CHECK(series_pow(u, 0) == TruncatedSeries<Fp>::constant(Fp(1, 3), 7));
    }
}

TEST_CASE("compositional inverse") {
    // frozen example over F_3
    auto h = fp_series(3, {0, 1, 1, 0, 0});
    CHECK(series_comp_inverse(h) == fp_series(3, {0, 1, 2, 2, 1}));

    SplitMix64 rng(23);
    auto id = TruncatedSeries<Fp>::identity(Fp(0, 5), 8);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Fp> v{Fp(0, 5), Fp(1 + rng.below(4), 5)};
        for (int k = 2; k <= 8; ++k) v.push_back(Fp(rng.below(5), 5));
        TruncatedSeries<Fp> g(v);
        auto gi = series_comp_inverse(g);
        CHECK(series_compose(g, gi) == id);
        CHECK(series_compose(gi, g) == id);
    }
    CHECK_THROWS_AS(series_comp_inverse(fp_series(3, {1, 1})), NotInvertible);
    CHECK_THROWS_AS(series_comp_inverse(fp_series(3, {0, 0, 1})), NotInvertible);
}
