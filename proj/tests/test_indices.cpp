#include "doctest.h"

#include "helpers.hpp"
#include "wildram/indices.hpp"

using namespace wildram;
using testutil::fp_series;
using testutil::random_wild;
using testutil::wild;

namespace {

// Independent check: solve W(z) (z - f(z)) = z^{q - l_j} for the Laurent
// series W coefficient by coefficient and read off the z^{-1} coefficient.
Fp laurent_division_oracle(const WildSeries<Fp>& f, int j) {
    const int64_t q = f.q_checked();
    LambdaSet L = lambda_set(q, f.char_p());
    const int64_t l = L.ell(j);
    auto den = minus_z(f.series()); // f - z
    auto b = [&](int64_t m) { return -den.coeff(static_cast<int>(m)); };
    std::vector<Fp> w(static_cast<size_t>(l) + 1, f.ring().zero());
    Fp lead_inv = b(q + 1).inverse();
    w[0] = lead_inv;
    for (int64_t m = 1; m <= l; ++m) {
        Fp s = f.ring().zero();
        for (int64_t i = 0; i < m; ++i) s = s + w[static_cast<size_t>(i)] * b(q + 1 + m - i);
        w[static_cast<size_t>(m)] = -(lead_inv * s);
    }
    return w.back();
}

WildSeries<Fp> generic_example() {
    // z + z^5 + 2 z^6 over F_3, precision enough for every index
    return wild(3, {0, 1, 0, 0, 0, 1, 2, 0, 0, 0});
}

} // namespace

TEST_CASE("admissible exponent sets") {
    auto L = lambda_set(4, 3);
    CHECK(L.ells == std::vector<int64_t>{1, 4});
    CHECK(L.r() == 2);
    CHECK(L.ell(1) == 1);
    CHECK(L.ell(2) == 4);
    CHECK(lambda_set(7, 3).ells == std::vector<int64_t>{1, 4, 7});
    CHECK(lambda_set(9, 3).ells == std::vector<int64_t>{0, 3, 6, 9});
    CHECK(lambda_set(1, 5).ells == std::vector<int64_t>{1});
}

TEST_CASE("partial indices of fixed examples") {
    auto f = generic_example();
    CHECK(partial_index(f, 1) == Fp(2, 3));
    CHECK(partial_index(f, 2) == Fp(2, 3));
    CHECK(residue_index(f) == Fp(2, 3));
    CHECK(iterative_residue(f) == Fp(2, 3));

    CHECK(residue_index(wild(5, {0, 1, 1, 3})) == Fp(3, 5));
    CHECK(iterative_residue(wild(3, {0, 1, 0, 0, 0, 1, 0, 0, 0, 0})) == Fp(1, 3));
}

TEST_CASE("closed formula, series division and long division agree") {
    SplitMix64 rng(53);
    for (int rep = 0; rep < 40; ++rep) {
        uint32_t p = rep % 2 ? 3 : 5;
        int64_t q = 1 + static_cast<int64_t>(rng.below(8));
        auto f = random_wild(rng, p, q, static_cast<int>(2 * q + 1));
        LambdaSet L = lambda_set(q, p);
        for (int j = 1; j <= L.r(); ++j) {
            Fp want = laurent_division_oracle(f, j);
            CHECK(partial_index(f, j) == want);
            CHECK(partial_index_closed(f, j) == want);
        }
    }
}

TEST_CASE("smallest nonvanishing index") {
    auto s1 = smallest_index_j(generic_example());
    CHECK(s1.j == 1);
    CHECK(s1.r == 2);

    auto s2 = smallest_index_j(wild(3, {0, 1, 0, 0, 0, 1, 0, 0, 0, 0})); // z + z^5
    CHECK(!s2.j.has_value());

    auto f3 = wild(3, {0, 1, 0, 0, 0, 1, 0, 0, 0, 1}); // z + z^5 + z^9
    auto s3 = smallest_index_j(f3);
    CHECK(s3.j == 2);
    CHECK(residue_index(f3) == Fp(1, 3));
    CHECK(iterative_residue(f3) == Fp(0, 3));
}

TEST_CASE("index report bundles the invariants") {
    auto rep = index_report(generic_example());
    CHECK(rep.q == 4);
    CHECK(rep.lambda.ells == std::vector<int64_t>{1, 4});
    CHECK(rep.pind == std::vector<Fp>{Fp(2, 3), Fp(2, 3)});
    CHECK(rep.ind == Fp(2, 3));
    CHECK(rep.resit == Fp(2, 3));
    CHECK(rep.smallest.j == 1);
}

TEST_CASE("conjugation scales the first index by a power of gamma") {
    auto f = generic_example();
    auto h = TruncatedSeries<Fp>::zeros(Fp(0, 3), f.prec());
    h.set_coeff(1, Fp(2, 3)); // h = 2z, gamma^{l_1 - q} = 2^{-3} = 2
    CHECK(partial_index(conjugate(f, h), 1) == Fp(1, 3));

    SplitMix64 rng(59);
    for (int rep = 0; rep < 20; ++rep) {
        // p = 7 distinguishes gamma^{q-l} from gamma^{l-q}; p = 3 does not
        uint32_t p = rep % 2 ? 3 : 7;
        int64_t q = rep % 2 ? 4 : 10;
        int prec = static_cast<int>(2 * q + 4);
        auto g = random_wild(rng, p, q, prec);
        auto coord = TruncatedSeries<Fp>::zeros(Fp(0, p), prec);
        Fp gamma(1 + rng.below(p - 1), p);
        coord.set_coeff(1, gamma);
        for (int k = 2; k <= prec; ++k) coord.set_coeff(k, Fp(rng.below(p), p));
        auto conj = conjugate(g, coord);
        int64_t l1 = lambda_set(q, p).ell(1);
        CHECK(partial_index(conj, 1) == gamma.pow(q - l1) * partial_index(g, 1));
        CHECK(residue_index(conj) == residue_index(g));
        CHECK(iterative_residue(conj) == iterative_residue(g));
    }
}

TEST_CASE("indices of iterates scale by 1/n") {
    auto f = generic_example();
    CHECK(partial_index(iterate(f, 2), 1) == Fp(1, 3)); // 2^{-1} * 2
    SplitMix64 rng(61);
    for (int rep = 0; rep < 10; ++rep) {
        auto g = random_wild(rng, 5, 7, 16); // l_1 = 2 < q
        Fp base = partial_index(g, 1);
        for (int64_t n : {2, 3, 4}) {
            CHECK(partial_index(iterate(g, n), 1) == Fp::from_int(n, 5).inverse() * base);
        }
    }
}

TEST_CASE("predicted ramification numbers") {
    CHECK(omega(4, 1, 3, 0) == 4);
    CHECK(omega(4, 1, 3, 1) == 13);
    CHECK(omega(4, 1, 3, 2) == 40);
    CHECK(omega(7, 1, 3, 2) == 67);
    CHECK(omega(4, 4, 3, 1) == 16);
}

TEST_CASE("leading coefficients of deep iterates follow the index") {
    auto s = TruncatedSeries<Fp>::identity(Fp(0, 3), 62);
    s.set_coeff(5, Fp(1, 3));
    s.set_coeff(6, Fp(2, 3));
    auto f = WildSeries<Fp>(s);
    Fp alpha = f.inner_coeff(4);
    Fp pind1 = partial_index(f, 1);
    for (int n : {1, 2}) {
        int64_t e1 = 0, e2 = 0, pk = 1;
        for (int u = 0; u <= n; ++u) {
            e1 += pk;
            if (u < n) e2 += pk;
            pk *= 3;
        }
        Fp want = alpha.pow(e1) * pind1.pow(e2);
        if (n % 2 != 0) want = -want;
        CHECK(delta_coefficient(f, n) == want);
    }
}

TEST_CASE("normal form under conjugation") {
    auto f = wild(3, {0, 1, 0, 0, 0, 1, 0, 1, 0, 0}); // z + z^5 + z^7
    auto nf = normal_form(f, 1);
    CHECK(nf.alpha == Fp(1, 3));
    CHECK(nf.beta == Fp(0, 3));
    CHECK(nf.g.inner_coeff(6).is_zero());

    SplitMix64 rng(67);
    for (int rep = 0; rep < 10; ++rep) {
        auto g = random_wild(rng, 3, 4, 14);
        auto sm = smallest_index_j(g);
        if (!sm.j) continue;
        auto n = normal_form(g, *sm.j);
        CHECK(n.beta * n.alpha.pow(-2) == partial_index(g, *sm.j));
        CHECK(partial_index(n.g, *sm.j) == partial_index(g, *sm.j));
    }

    auto fx = generic_example(); // pind_1 != 0 blocks the j = 2 form
    CHECK_THROWS_AS(normal_form(fx, 2), PrecedingIndexNonzero);
}

TEST_CASE("classification against measured ramification") {
    auto s = TruncatedSeries<Fp>::identity(Fp(0, 3), 62);
    s.set_coeff(5, Fp(1, 3));
    s.set_coeff(6, Fp(2, 3));
    auto v1 = classify(WildSeries<Fp>(s), 2);
    CHECK(v1.kind == VerdictKind::ByIndex);
    CHECK(v1.smallest.j == 1);
    CHECK(v1.predicted == std::vector<int64_t>{13, 40});
    CHECK(v1.match);

    auto s2 = TruncatedSeries<Fp>::identity(Fp(0, 3), 26);
    s2.set_coeff(5, Fp(1, 3));
    auto v2 = classify(WildSeries<Fp>(s2), 1);
    CHECK(v2.kind == VerdictKind::QRamified);
    CHECK(v2.predicted == std::vector<int64_t>{16});
    CHECK(v2.match);
    auto qr = is_q_ramified(WildSeries<Fp>(s2), 1);
    CHECK(qr.first);
    CHECK(qr.second);

    auto s3 = TruncatedSeries<Fp>::identity(Fp(0, 3), 26);
    s3.set_coeff(5, Fp(1, 3));
    s3.set_coeff(9, Fp(1, 3));
    auto v3 = classify(WildSeries<Fp>(s3), 1);
    CHECK(v3.kind == VerdictKind::Unclassified);
    auto qr3 = is_q_ramified(WildSeries<Fp>(s3), 1);
    CHECK(!qr3.first);
    CHECK(!qr3.second);
}

TEST_CASE("residues of differential forms") {
    auto h = fp_series(3, {0, 1, 1, 0, 0, 0, 0, 0});
    CHECK(residue_of_form(h, 3, 4) == Fp(0, 3)); // p does not divide N
    CHECK(residue_of_form(h, 3, 3) == Fp(1, 3)); // N = d gives h'(0)^{-d}
    auto h2 = fp_series(3, {0, 2, 1, 0, 0, 0, 0, 0});
    CHECK(residue_of_form(h2, 3, 3) == Fp(2, 3)); // 2^{-3}
    CHECK(residue_of_form(h, 6, 3) == Fp(0, 3)); // N < d
    CHECK_THROWS_AS(residue_of_form(h, 5, 3), NotDivisible);
}
