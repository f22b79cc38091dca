#pragma once

#include <initializer_list>
#include <vector>

#include "wildram/fp.hpp"
#include "wildram/rng.hpp"
#include "wildram/wild.hpp"

namespace testutil {

using namespace wildram;

// Series from the coefficient list c_0..c_n over F_p.
inline TruncatedSeries<Fp> fp_series(uint32_t p, std::initializer_list<int64_t> coeffs) {
    std::vector<Fp> v;
    for (int64_t c : coeffs) v.push_back(Fp::from_int(c, p));
    return TruncatedSeries<Fp>(std::move(v));
}

inline WildSeries<Fp> wild(uint32_t p, std::initializer_list<int64_t> coeffs) {
    return WildSeries<Fp>(fp_series(p, coeffs));
}

// Random f = z + ... z^{q+1} + ... with a nonzero coefficient at z^{q+1}.
inline WildSeries<Fp> random_wild(SplitMix64& g, uint32_t p, int64_t q, int prec) {
    auto s = TruncatedSeries<Fp>::identity(Fp(0, p), prec);
    s.set_coeff(static_cast<int>(q) + 1, Fp(1 + g.below(p - 1), p));
    for (int k = static_cast<int>(q) + 2; k <= prec; ++k)
        s.set_coeff(k, Fp(g.below(p), p));
    return WildSeries<Fp>(std::move(s));
}

} // namespace testutil
