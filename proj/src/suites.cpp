#include "wildram/suites.hpp"

#include <chrono>
#include <tuple>

#include "wildram/rng.hpp"
#include "wildram/spec_io.hpp"
#include "wildram/symbolic.hpp"

namespace wildram {

namespace {

int64_t param_int(const nlohmann::json& p, const char* key, int64_t def) {
    if (!p.contains(key)) return def;
    if (!p[key].is_number_integer()) throw UsageError(std::string("param '") + key + "' must be an integer");
    return p[key].get<int64_t>();
}

std::vector<int64_t> param_list(const nlohmann::json& p, const char* key,
                                std::vector<int64_t> def) {
    if (!p.contains(key)) return def;
    if (!p[key].is_array()) throw UsageError(std::string("param '") + key + "' must be an array");
    std::vector<int64_t> out;
    for (const auto& v : p[key]) out.push_back(v.get<int64_t>());
    return out;
}

using Case3 = std::tuple<uint32_t, int64_t, int64_t>;

std::vector<Case3> param_cases(const nlohmann::json& p, const char* key,
                               std::vector<Case3> def) {
    if (!p.contains(key)) return def;
    if (!p[key].is_array()) throw UsageError(std::string("param '") + key + "' must be an array");
    std::vector<Case3> out;
    for (const auto& v : p[key]) {
        if (!v.is_array() || v.size() != 3) throw UsageError("cases must be [p,q,l] triples");
        out.emplace_back(v[0].get<uint32_t>(), v[1].get<int64_t>(), v[2].get<int64_t>());
    }
    return out;
}

nlohmann::json cases_json(const std::vector<Case3>& cs) {
    auto arr = nlohmann::json::array();
    for (const auto& [p, q, l] : cs) arr.push_back(nlohmann::json::array({p, q, l}));
    return arr;
}

/// Shared tally; the first failing sample is kept as the counterexample.
struct Tally {
    int64_t samples = 0, pass = 0, fail = 0, law_violations = 0;
    int64_t delta_checks = 0;
    nlohmann::json counterexample = nullptr;

    void ok() { ++samples; ++pass; }
    void bad(nlohmann::json ce) {
        ++samples;
        ++fail;
        if (counterexample.is_null()) counterexample = std::move(ce);
    }
    void law(int n) { law_violations += n; }
};

nlohmann::json finish(const char* name, uint64_t seed, nlohmann::json params,
                      const Tally& t) {
    nlohmann::json rep;
    rep["schema"] = 1;
    rep["suite"] = name;
    rep["seed"] = seed;
    rep["params"] = std::move(params);
    rep["samples"] = t.samples;
    rep["pass"] = t.pass;
    rep["fail"] = t.fail;
    rep["law_violations"] = t.law_violations;
    if (t.delta_checks > 0) rep["delta_checks"] = t.delta_checks;
    rep["counterexample"] = t.counterexample;
    return rep;
}

int profile_law_violations(const RamificationProfile<Fp>& prof) {
    return (prof.sen_ok ? 0 : 1) + (prof.lower_bound_ok ? 0 : 1);
}

Fp rnd(SplitMix64& g, uint32_t p) { return Fp(g.below(p), p); }
Fp rnd_unit(SplitMix64& g, uint32_t p) { return Fp(1 + g.below(p - 1), p); }

TruncatedSeries<Fp> random_inner(SplitMix64& g, uint32_t p, int64_t q, int prec) {
    auto s = TruncatedSeries<Fp>::identity(Fp(0, p), prec);
    s.set_coeff(static_cast<int>(q) + 1, rnd_unit(g, p));
    for (int k = static_cast<int>(q) + 2; k <= prec; ++k) s.set_coeff(k, rnd(g, p));
    return s;
}

WildSeries<Fp> random_wild(SplitMix64& g, uint32_t p, int64_t q, int prec) {
    return WildSeries<Fp>(random_inner(g, p, q, prec));
}

TruncatedSeries<Fp> random_coordinate(SplitMix64& g, uint32_t p, int prec) {
    auto h = TruncatedSeries<Fp>::zeros(Fp(0, p), prec);
    h.set_coeff(1, rnd_unit(g, p));
    for (int k = 2; k <= prec; ++k) h.set_coeff(k, rnd(g, p));
    return h;
}

/// Adjusts the coefficient of z^{q+l_j+1} so that pind_j(f) equals target.
/// pind_j is affine in that coefficient with unit slope, so one interpolation
/// through two evaluations pins it down exactly.
void force_pind_target(TruncatedSeries<Fp>& s, int64_t q, int j, const Fp& target) {
    const uint32_t p = target.modulus();
    const int64_t lj = lambda_set(q, p).ell(j);
    const int at = static_cast<int>(q + lj) + 1;
    const Fp a = s.coeff(at);
    const Fp v0 = partial_index(WildSeries<Fp>(s), j);
    s.set_coeff(at, a + Fp(1, p));
    const Fp v1 = partial_index(WildSeries<Fp>(s), j);
    const Fp slope = v1 - v0;
    const Fp x = (target - v0) * slope.inverse();
    s.set_coeff(at, a + x);
    if (!(partial_index(WildSeries<Fp>(s), j) == target))
        throw InvariantViolation("index targeting failed");
}

std::string fp_str(const Fp& v) { return std::to_string(v.value()); }

// ---------------------------------------------------------------- suites --

SuiteOutcome suite_closed_formula(uint64_t seed, const nlohmann::json& raw) {
    auto p_list = param_list(raw, "p_list", {3, 5, 7});
    int64_t samples = param_int(raw, "samples", 500);
    int64_t q_max = param_int(raw, "q_max", 20);
    nlohmann::json params{{"p_list", p_list}, {"samples", samples}, {"q_max", q_max}};

    Tally t;
    uint64_t idx = 0;
    SuiteOutcome out;
    for (int64_t pv : p_list) {
        const uint32_t p = static_cast<uint32_t>(pv);
        for (int64_t k = 0; k < samples; ++k) {
            auto g = sample_rng(seed, idx++);
            const int64_t q = 1 + static_cast<int64_t>(g.below(static_cast<uint64_t>(q_max)));
            const int prec = static_cast<int>(2 * q) + 1;
            auto f = random_wild(g, p, q, prec);
            const int r = lambda_set(q, p).r();
            bool good = true;
            for (int j = 1; j <= r && good; ++j) {
                Fp a = partial_index(f, j), b = partial_index_closed(f, j);
                if (!(a == b)) {
                    good = false;
                    t.bad({{"sample", idx - 1},
                           {"spec", series_spec_to_json(spec_from_wild(f))},
                           {"j", j},
                           {"observed", fp_str(b)},
                           {"expected", fp_str(a)}});
                }
            }
            if (good) t.ok();
        }
    }
    out.report = finish("closed-formula", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_conj_invariance(uint64_t seed, const nlohmann::json& raw) {
    auto p_list = param_list(raw, "p_list", {3, 5, 7});
    int64_t samples = param_int(raw, "samples", 1000);
    int64_t q_max = param_int(raw, "q_max", 12);
    nlohmann::json params{{"p_list", p_list}, {"samples", samples}, {"q_max", q_max}};

    Tally t;
    SuiteOutcome out;
    for (int64_t k = 0; k < samples; ++k) {
        auto g = sample_rng(seed, static_cast<uint64_t>(k));
        const uint32_t p = static_cast<uint32_t>(p_list[g.below(p_list.size())]);
        const int64_t q = 1 + static_cast<int64_t>(g.below(static_cast<uint64_t>(q_max)));
        const int prec = static_cast<int>(2 * q) + 1;
        auto f = random_wild(g, p, q, prec);
        auto h = random_coordinate(g, p, prec);
        const Fp gamma = h.coeff(1);
        auto fc = conjugate(f, h);
        const LambdaSet L = lambda_set(q, p);

        auto fail = [&](const char* what, const std::string& obs, const std::string& want) {
            nlohmann::json hj;
            hj["gamma"] = gamma.value();
            auto arr = nlohmann::json::array();
            for (int kk = 2; kk <= h.prec(); ++kk)
                if (!h.coeff(kk).is_zero())
                    arr.push_back(nlohmann::json::array({kk, h.coeff(kk).value()}));
            hj["coeffs"] = arr;
            t.bad({{"sample", k},
                   {"spec", series_spec_to_json(spec_from_wild(f))},
                   {"h", hj},
                   {"law", what},
                   {"observed", obs},
                   {"expected", want}});
        };

        // first index scales unconditionally; for h o f o h^{-1} the factor
        // is gamma^{q - l_j} (e.g. pind_1 = a_{q+1}/a_q^2 when l_1 = 1, and
        // conjugation sends a_{q+i} to gamma^{-(q+i)} a_{q+i})
        Fp want1 = gamma.pow(q - L.ell(1)) * partial_index(f, 1);
        Fp got1 = partial_index(fc, 1);
        if (!(got1 == want1)) {
            fail("pind_1 scaling", fp_str(got1), fp_str(want1));
            continue;
        }
        auto sf = smallest_index_j(f), sc = smallest_index_j(fc);
        if (sf.j != sc.j) {
            fail("smallest index position",
                 sc.j ? std::to_string(*sc.j) : "none",
                 sf.j ? std::to_string(*sf.j) : "none");
            continue;
        }
        if (sf.j) {
            const int j = *sf.j;
            Fp want = gamma.pow(q - L.ell(j)) * partial_index(f, j);
            Fp got = partial_index(fc, j);
            if (!(got == want)) {
                fail("pind_j scaling at smallest j", fp_str(got), fp_str(want));
                continue;
            }
        }
        t.ok();
    }
    out.report = finish("conj-invariance", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_iter_residue(uint64_t seed, const nlohmann::json& raw) {
    auto p_list = param_list(raw, "p_list", {3, 5});
    int64_t samples = param_int(raw, "samples", 200);
    nlohmann::json params{{"p_list", p_list}, {"samples", samples}};

    Tally t;
    SuiteOutcome out;
    uint64_t idx = 0;
    for (int64_t pv : p_list) {
        const uint32_t p = static_cast<uint32_t>(pv);
        std::vector<int64_t> n_set;
        for (int64_t n = 2; n <= p - 1; ++n) n_set.push_back(n);
        n_set.push_back(p + 1);
        for (int64_t k = 0; k < samples; ++k) {
            auto g = sample_rng(seed, idx++);
            int64_t q = p + 1 + static_cast<int64_t>(g.below(12));
            if (q % p == 0) q += 1; // keep l_1 >= 1, q > p
            const int64_t l1 = q % p;
            const int prec = static_cast<int>(q + l1) + 1;
            auto f = random_wild(g, p, q, prec);
            const Fp base = partial_index(f, 1);
            bool good = true;
            for (int64_t n : n_set) {
                Fp got = partial_index(iterate(f, n), 1);
                Fp want = Fp::from_int(n, p).inverse() * base;
                if (!(got == want)) {
                    good = false;
                    t.bad({{"sample", idx - 1},
                           {"spec", series_spec_to_json(spec_from_wild(f))},
                           {"n", n},
                           {"observed", fp_str(got)},
                           {"expected", fp_str(want)}});
                    break;
                }
            }
            if (good) t.ok();
        }
    }
    out.report = finish("iter-residue", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_criterion1(uint64_t seed, const nlohmann::json& raw) {
    const uint32_t p = static_cast<uint32_t>(param_int(raw, "p", 3));
    auto q_list = param_list(raw, "q_list", {4, 5, 7, 8});
    int64_t n_max = param_int(raw, "n_max", 2);
    int64_t samples = param_int(raw, "samples", 100);
    nlohmann::json params{
        {"p", p}, {"q_list", q_list}, {"n_max", n_max}, {"samples", samples}};

    Tally t;
    SuiteOutcome out;
    out.csv_header = csv_profile_header(static_cast<int>(n_max));
    uint64_t idx = 0;
    for (int64_t q : q_list) {
        const int64_t l = q % p;
        // positive direction: pind_1 != 0 forces the exact staircase, and the
        // leading coefficients follow the alternating power formula
        const int prec_pos = static_cast<int>(required_precision(q, p, static_cast<int>(n_max)));
        for (int64_t k = 0; k < samples; ++k) {
            auto g = sample_rng(seed, idx++);
            auto s = random_inner(g, p, q, prec_pos);
            WildSeries<Fp> f{s};
            Fp pind1 = partial_index(f, 1);
            if (pind1.is_zero()) {
                // affine in this coefficient, so one bump leaves zero behind
                const int at = static_cast<int>(q + l) + 1;
                s.set_coeff(at, s.coeff(at) + Fp(1, p));
                f = WildSeries<Fp>(s);
                pind1 = partial_index(f, 1);
            }
            auto prof = lower_ramification(f, static_cast<int>(n_max));
            t.law(profile_law_violations(prof));
            out.csv_rows.push_back(csv_profile_row(prof, l));
            bool good = true;
            std::string obs, want;
            for (int n = 1; n <= n_max && good; ++n) {
                const int64_t expect = omega(q, l, p, n);
                if (!prof.levels[n].i.is_finite() || prof.levels[n].i.value != expect) {
                    good = false;
                    obs = prof.levels[n].i.is_finite()
                              ? "i_" + std::to_string(n) + "=" + std::to_string(prof.levels[n].i.value)
                              : "i_" + std::to_string(n) + ">=" + std::to_string(prof.levels[n].i.value - 1);
                    want = "i_" + std::to_string(n) + "=" + std::to_string(expect);
                }
            }
            const Fp alpha = f.inner_coeff(q);
            for (int n = 1; n <= n_max && good; ++n) {
                // delta_n = (-1)^n alpha^{1+p+..+p^n} pind_1^{1+p+..+p^{n-1}}
                int64_t e1 = 0, e2 = 0, pk = 1;
                for (int u = 0; u <= n; ++u) {
                    if (u < n) e2 += pk;
                    e1 += pk;
                    pk *= p;
                }
                Fp expect = alpha.pow(e1) * pind1.pow(e2);
                if (n % 2 == 1) expect = -expect;
                const Fp got = *prof.levels[n].delta;
                ++t.delta_checks;
                if (!(got == expect)) {
                    good = false;
                    obs = "delta_" + std::to_string(n) + "=" + fp_str(got);
                    want = "delta_" + std::to_string(n) + "=" + fp_str(expect);
                }
            }
            if (good)
                t.ok();
            else
                t.bad({{"sample", idx - 1},
                       {"spec", series_spec_to_json(spec_from_wild(f))},
                       {"observed", obs},
                       {"expected", want}});
        }
        // negative direction: pind_1 = 0 pushes i_1 strictly above qp + l
        const int prec_neg = static_cast<int>(required_precision(q, p, 1));
        for (int64_t k = 0; k < samples; ++k) {
            auto g = sample_rng(seed, idx++);
            auto s = random_inner(g, p, q, prec_neg);
            force_pind_target(s, q, 1, Fp(0, p));
            auto f = conjugate(WildSeries<Fp>(s), random_coordinate(g, p, prec_neg));
            auto prof = lower_ramification(f, static_cast<int>(n_max));
            t.law(profile_law_violations(prof));
            out.csv_rows.push_back(csv_profile_row(prof, l));
            const int64_t gate = omega(q, l, p, 1);
            const int64_t sound =
                prof.levels[1].i.is_finite() ? prof.levels[1].i.value : prof.levels[1].i.value - 1;
            if (sound > gate)
                t.ok();
            else
                t.bad({{"sample", idx - 1},
                       {"spec", series_spec_to_json(spec_from_wild(f))},
                       {"observed", "i_1=" + std::to_string(sound)},
                       {"expected", "i_1>" + std::to_string(gate)}});
        }
    }
    out.report = finish("criterion1", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_criterion2(uint64_t seed, const nlohmann::json& raw) {
    const uint32_t p = static_cast<uint32_t>(param_int(raw, "p", 3));
    auto q_list = param_list(raw, "q_list", {7, 8, 10});
    int64_t samples = param_int(raw, "samples", 10);
    nlohmann::json params{{"p", p}, {"q_list", q_list}, {"samples", samples}};

    Tally t;
    SuiteOutcome out;
    out.csv_header = csv_profile_header(2);
    uint64_t idx = 0;
    for (int64_t q : q_list) {
        const LambdaSet L = lambda_set(q, p);
        const int s_ceil = static_cast<int>((q + p - 1) / p);
        const int prec = static_cast<int>(required_precision(q, p, 2));
        for (int j = 1; j < s_ceil; ++j) {
            const int64_t lj = L.ell(j);
            for (int branch = 0; branch < 2; ++branch) {
                const bool nonzero = branch == 0;
                for (int64_t k = 0; k < samples; ++k) {
                    auto g = sample_rng(seed, idx++);
                    auto s = TruncatedSeries<Fp>::identity(Fp(0, p), prec);
                    s.set_coeff(static_cast<int>(q) + 1, rnd_unit(g, p));
                    if (nonzero) s.set_coeff(static_cast<int>(q + lj) + 1, rnd_unit(g, p));
                    // tail beyond z^{q+l_j+1} cannot disturb pind_1..pind_j
                    for (int d = static_cast<int>(q + lj) + 2; d <= prec; ++d)
                        s.set_coeff(d, rnd(g, p));
                    WildSeries<Fp> f{std::move(s)};
                    auto prof = lower_ramification(f, 2);
                    t.law(profile_law_violations(prof));
                    out.csv_rows.push_back(csv_profile_row(prof, lj));

                    auto smallest = smallest_index_j(f);
                    bool good = true;
                    std::string obs, want;
                    if (nonzero) {
                        if (smallest.j != std::optional<int>(j)) {
                            good = false;
                            obs = "smallest j=" + (smallest.j ? std::to_string(*smallest.j) : "none");
                            want = "smallest j=" + std::to_string(j);
                        }
                        const int64_t w1 = omega(q, lj, p, 1), w2 = omega(q, lj, p, 2);
                        if (good && (!prof.levels[1].i.is_finite() || prof.levels[1].i.value != w1)) {
                            good = false;
                            obs = "i_1!=" + std::to_string(w1);
                            want = "i_1=" + std::to_string(w1);
                        }
                        if (good && (!prof.levels[2].i.is_finite() || prof.levels[2].i.value != w2)) {
                            good = false;
                            obs = "i_2!=" + std::to_string(w2);
                            want = "i_2=" + std::to_string(w2);
                        }
                    } else {
                        const int64_t gate = omega(q, lj, p, 1);
                        const int64_t sound = prof.levels[1].i.is_finite()
                                                  ? prof.levels[1].i.value
                                                  : prof.levels[1].i.value - 1;
                        if (sound <= gate) {
                            good = false;
                            obs = "i_1=" + std::to_string(sound);
                            want = "i_1>" + std::to_string(gate);
                        }
                    }
                    if (good)
                        t.ok();
                    else
                        t.bad({{"sample", idx - 1},
                               {"spec", series_spec_to_json(spec_from_wild(f))},
                               {"j", j},
                               {"observed", obs},
                               {"expected", want}});
                }
            }
        }
    }
    out.report = finish("criterion2", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_q_ramified(uint64_t seed, const nlohmann::json& raw) {
    const uint32_t p = 3;
    int64_t samples = param_int(raw, "samples", 40);
    nlohmann::json params{{"p", p}, {"samples", samples}};

    Tally t;
    SuiteOutcome out;
    out.csv_header = csv_profile_header(1);

    // named case: z + z^5 over F_3 is 4-ramified with resit = 1
    {
        auto s = TruncatedSeries<Fp>::identity(Fp(0, p), 26);
        s.set_coeff(5, Fp(1, p));
        WildSeries<Fp> f{std::move(s)};
        auto [pred, meas] = is_q_ramified(f, 1);
        auto prof = lower_ramification(f, 1);
        t.law(profile_law_violations(prof));
        out.csv_rows.push_back(csv_profile_row(prof, 4));
        const Fp resit = iterative_residue(f);
        if (pred && meas && prof.levels[1].i == OrderBound::finite(16) && resit == Fp(1, p))
            t.ok();
        else
            t.bad({{"sample", "z+z^5"},
                   {"observed", "pred=" + std::to_string(pred) + " meas=" + std::to_string(meas) +
                                    " resit=" + fp_str(resit)},
                   {"expected", "pred=1 meas=1 i_1=16 resit=1"}});
    }
    // named case: z(1 + z^4 + z^8) has resit = 0 and misses the profile
    {
        auto s = TruncatedSeries<Fp>::identity(Fp(0, p), 26);
        s.set_coeff(5, Fp(1, p));
        s.set_coeff(9, Fp(1, p));
        WildSeries<Fp> f{std::move(s)};
        auto [pred, meas] = is_q_ramified(f, 1);
        auto prof = lower_ramification(f, 1);
        t.law(profile_law_violations(prof));
        out.csv_rows.push_back(csv_profile_row(prof, 4));
        const Fp resit = iterative_residue(f);
        const bool i1_not_16 = !(prof.levels[1].i == OrderBound::finite(16));
        if (!pred && !meas && resit.is_zero() && i1_not_16)
            t.ok();
        else
            t.bad({{"sample", "z(1+z^4+z^8)"},
                   {"observed", "pred=" + std::to_string(pred) + " meas=" + std::to_string(meas) +
                                    " resit=" + fp_str(resit)},
                   {"expected", "pred=0 meas=0 resit=0 i_1!=16"}});
    }

    // random q = p+1 constructions, half with resit forced to zero
    const int64_t q = p + 1;
    const int prec = static_cast<int>(required_precision(q, p, 1));
    const Fp half_q1 = Fp::from_int(q + 1, p) * Fp(2, p).inverse();
    for (int64_t k = 0; k < samples; ++k) {
        auto g = sample_rng(seed, static_cast<uint64_t>(k));
        const bool want_ramified = k % 2 == 0;
        auto s = random_inner(g, p, q, prec);
        force_pind_target(s, q, 1, Fp(0, p));
        // resit = (q+1)/2 - ind, so pick ind accordingly
        Fp ind_target = want_ramified ? half_q1 + rnd_unit(g, p) : half_q1;
        force_pind_target(s, q, lambda_set(q, p).r(), ind_target);
        auto f = conjugate(WildSeries<Fp>(s), random_coordinate(g, p, prec));
        auto [pred, meas] = is_q_ramified(f, 1);
        auto prof = lower_ramification(f, 1);
        t.law(profile_law_violations(prof));
        out.csv_rows.push_back(csv_profile_row(prof, q));
        const bool i1_is = prof.levels[1].i == OrderBound::finite(q * (1 + p));
        bool good = pred == want_ramified && meas == want_ramified && i1_is == want_ramified;
        if (good)
            t.ok();
        else
            t.bad({{"sample", k},
                   {"spec", series_spec_to_json(spec_from_wild(f))},
                   {"observed", "pred=" + std::to_string(pred) + " meas=" + std::to_string(meas)},
                   {"expected", std::string("both ") + (want_ramified ? "true" : "false")}});
    }
    out.report = finish("q-ramified", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_sen_lower_bound(uint64_t seed, const nlohmann::json& raw) {
    int64_t samples = param_int(raw, "samples", 50);
    nlohmann::json params{{"samples", samples}};

    Tally t;
    SuiteOutcome out;
    out.csv_header = csv_profile_header(2);
    uint64_t idx = 0;
    for (auto [pv, n_max] : {std::pair<uint32_t, int>{3, 2}, {5, 1}}) {
        for (int64_t k = 0; k < samples; ++k) {
            auto g = sample_rng(seed, idx++);
            const int64_t q = 2 + static_cast<int64_t>(g.below(9)); // any q, p | q included
            const int prec = static_cast<int>(required_precision(q, pv, n_max));
            auto f = random_wild(g, pv, q, prec);
            auto prof = lower_ramification(f, n_max);
            const int v = profile_law_violations(prof);
            t.law(v);
            std::string row = csv_profile_row(prof, q % pv);
            if (n_max < 2) row += ",";
            out.csv_rows.push_back(row);
            if (v == 0)
                t.ok();
            else
                t.bad({{"sample", idx - 1},
                       {"spec", series_spec_to_json(spec_from_wild(f))},
                       {"observed", std::string("sen_ok=") + (prof.sen_ok ? "1" : "0") +
                                        " lower_bound_ok=" + (prof.lower_bound_ok ? "1" : "0")},
                       {"expected", "both laws hold"}});
        }
    }
    out.report = finish("sen-lower-bound", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_main_lemma(uint64_t seed, const nlohmann::json& raw) {
    auto cases = param_cases(raw, "cases",
                             {{3, 4, 1}, {3, 5, 2}, {3, 7, 1}, {5, 7, 2}, {5, 11, 1}});
    nlohmann::json params{{"cases", cases_json(cases)}};

    Tally t;
    SuiteOutcome out;
    for (size_t k = 0; k < cases.size(); ++k) {
        auto [p, q, l] = cases[k];
        auto rep = verify_iterate_two_term(p, q, l);
        if (rep.pass)
            t.ok();
        else
            t.bad({{"sample", k},
                   {"case", nlohmann::json::array({p, q, l})},
                   {"observed",
                    "beta=" + rep.beta.to_string() + " gamma=" + rep.gamma.to_string() +
                        (rep.first_bad_degree >= 0
                             ? " stray z^" + std::to_string(rep.first_bad_degree) + ": " +
                                   rep.first_bad_coeff.to_string()
                             : "")},
                   {"expected", "beta=" + rep.beta_want.to_string() +
                                    " gamma=" + rep.gamma_want.to_string() + " rest 0"}});
    }
    out.report = finish("main-lemma", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_delta_short(uint64_t seed, const nlohmann::json& raw) {
    auto cases_lt = param_cases(raw, "cases_lt",
                                {{3, 4, 1}, {3, 5, 2}, {3, 7, 4}, {5, 7, 2}, {5, 11, 1}});
    auto cases_eq = param_cases(raw, "cases_eq",
                                {{3, 4, 4}, {3, 5, 5}, {3, 7, 7}, {5, 7, 7}, {5, 11, 11}});
    nlohmann::json params{{"cases_lt", cases_json(cases_lt)}, {"cases_eq", cases_json(cases_eq)}};

    Tally t;
    SuiteOutcome out;
    uint64_t idx = 0;
    auto run_leading = [&](const Case3& c) {
        auto [p, q, l] = c;
        auto rep = verify_iterate_leading(p, q, l);
        if (rep.pass)
            t.ok();
        else
            t.bad({{"sample", idx},
                   {"case", nlohmann::json::array({p, q, l})},
                   {"observed", "beta=" + rep.beta.to_string()},
                   {"expected", "beta=" + rep.beta_want.to_string() + " rest 0"}});
        ++idx;
    };
    for (const auto& c : cases_lt) run_leading(c);
    for (const auto& c : cases_eq) run_leading(c);
    for (const auto& c : cases_lt) {
        auto [p, q, l] = c;
        auto rec = iterate_coefficient_recurrences(p, q, l, static_cast<int>(p));
        if (rec.closed_forms_ok && rec.delta_claims_ok && rec.alpha_p_zero && rec.beta_p_ok)
            t.ok();
        else
            t.bad({{"sample", idx},
                   {"case", nlohmann::json::array({p, q, l})},
                   {"observed", std::string("closed=") + (rec.closed_forms_ok ? "1" : "0") +
                                    " delta=" + (rec.delta_claims_ok ? "1" : "0") +
                                    " alpha_p_zero=" + (rec.alpha_p_zero ? "1" : "0") +
                                    " beta_p=" + (rec.beta_p_ok ? "1" : "0")},
                   {"expected", "all recurrence checks hold"}});
        ++idx;
    }
    out.report = finish("delta-short", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_powersarezero(uint64_t seed, const nlohmann::json& raw) {
    const uint32_t p = static_cast<uint32_t>(param_int(raw, "p", 3));
    auto d_list = param_list(raw, "d_list", {3, 6});
    int64_t samples = param_int(raw, "samples", 50);
    nlohmann::json params{{"p", p}, {"d_list", d_list}, {"samples", samples}};

    Tally t;
    SuiteOutcome out;
    const int prec = 12;
    for (int64_t k = 0; k < samples; ++k) {
        auto g = sample_rng(seed, static_cast<uint64_t>(k));
        auto h = random_coordinate(g, p, prec);
        const Fp gamma = h.coeff(1);
        bool good = true;
        std::string obs, want;
        for (int64_t d : d_list) {
            for (int64_t N = 1; N <= 2 * static_cast<int64_t>(p) && good; ++N) {
                const Fp c = residue_of_form(h, d, N);
                if (N % p != 0 && !c.is_zero()) {
                    good = false;
                    obs = "c(d=" + std::to_string(d) + ",N=" + std::to_string(N) + ")=" + fp_str(c);
                    want = "0 since p does not divide N";
                }
                if (N == d && !(c == gamma.pow(-d))) {
                    good = false;
                    obs = "c(d=" + std::to_string(d) + ",N=" + std::to_string(N) + ")=" + fp_str(c);
                    want = "h'(0)^{-d}=" + fp_str(gamma.pow(-d));
                }
            }
            if (!good) break;
        }
        if (good)
            t.ok();
        else {
            SeriesSpec hs;
            hs.p = p;
            hs.prec = prec;
            for (int kk = 2; kk <= prec; ++kk)
                if (!h.coeff(kk).is_zero())
                    hs.coeffs.push_back({kk, false, h.coeff(kk).value(), {}});
            t.bad({{"sample", k},
                   {"h", series_spec_to_json(hs)},
                   {"gamma", gamma.value()},
                   {"observed", obs},
                   {"expected", want}});
        }
    }
    out.report = finish("powersarezero", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

SuiteOutcome suite_newton_bounds(uint64_t seed, const nlohmann::json& raw) {
    const uint32_t p = 3;
    int64_t samples = param_int(raw, "samples", 100);
    nlohmann::json params{{"p", p}, {"samples", samples}};

    Tally t;
    SuiteOutcome out;
    for (int64_t k = 0; k < samples; ++k) {
        auto g = sample_rng(seed, static_cast<uint64_t>(k));
        const int64_t q = k % 2 == 0 ? 4 : 5;
        const int64_t a = 1 + static_cast<int64_t>(g.below(3));
        // c(t) = t^b * (nonzero polynomial), degree <= 2 before the shift
        const int64_t b = static_cast<int64_t>(g.below(3));
        FpPoly c(p);
        for (int64_t i = 0; i <= 2; ++i)
            c = c + FpPoly::t_power(p, static_cast<int>(i), g.below(p));
        if (c.is_zero()) c = FpPoly::constant(Fp(1, p));
        c = c.shifted(static_cast<int>(b));

        ValuedPoly f = ValuedPoly::identity_z(p);
        f.set_coeff(q + 1, RationalFunction::from_poly(FpPoly::t_power(p, static_cast<int>(a), 1)));
        f.set_coeff(q + 2, RationalFunction::from_poly(c));
        try {
            auto fx = fixed_point_valuations(f);
            auto pb = periodic_point_bound(f);
            if (pb.delta_applicable && !pb.delta_ok) t.law(1);
            if (fx.pass && pb.pass && (!pb.delta_applicable || pb.delta_ok))
                t.ok();
            else
                t.bad({{"sample", k},
                       {"spec", series_spec_to_json(spec_from_valued(f, static_cast<int>(2 * q) + 2))},
                       {"observed", std::string("fixed=") + (fx.pass ? "1" : "0") + " periodic=" +
                                        (pb.pass ? "1" : "0") + " delta_ok=" + (pb.delta_ok ? "1" : "0")},
                       {"expected", "all bounds hold"}});
        } catch (const Error& e) {
            t.bad({{"sample", k},
                   {"spec", series_spec_to_json(spec_from_valued(f, static_cast<int>(2 * q) + 2))},
                   {"observed", std::string("error: ") + e.what()},
                   {"expected", "bounds computed"}});
        }
    }
    out.report = finish("newton-bounds", seed, params, t);
    out.all_pass = t.fail == 0 && t.law_violations == 0;
    return out;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "conj-invariance", "iter-residue", "closed-formula", "criterion1",
        "criterion2",      "q-ramified",   "sen-lower-bound", "main-lemma",
        "delta-short",     "powersarezero", "newton-bounds"};
    return names;
}

SuiteOutcome run_suite(const std::string& name, uint64_t seed,
                       const nlohmann::json& params) {
    if (!params.is_object() && !params.is_null())
        throw UsageError("suite params must be a JSON object");
    const nlohmann::json p = params.is_null() ? nlohmann::json::object() : params;
    const auto t0 = std::chrono::steady_clock::now();
    SuiteOutcome out;
    if (name == "closed-formula") out = suite_closed_formula(seed, p);
    else if (name == "conj-invariance") out = suite_conj_invariance(seed, p);
    else if (name == "iter-residue") out = suite_iter_residue(seed, p);
    else if (name == "criterion1") out = suite_criterion1(seed, p);
    else if (name == "criterion2") out = suite_criterion2(seed, p);
    else if (name == "q-ramified") out = suite_q_ramified(seed, p);
    else if (name == "sen-lower-bound") out = suite_sen_lower_bound(seed, p);
    else if (name == "main-lemma") out = suite_main_lemma(seed, p);
    else if (name == "delta-short") out = suite_delta_short(seed, p);
    else if (name == "powersarezero") out = suite_powersarezero(seed, p);
    else if (name == "newton-bounds") out = suite_newton_bounds(seed, p);
    else throw UnknownSuite("no suite named '" + name + "'");
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace wildram
