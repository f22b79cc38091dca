#include "wildram/spec_io.hpp"

#include <algorithm>
#include <cctype>

namespace wildram {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

uint64_t parse_uint(const std::string& s, const char* what) {
    if (!all_digits(s) || s.size() > 18)
        throw ParseError(std::string("bad integer in ") + what + ": '" + s + "'");
    return std::stoull(s);
}

} // namespace

FpPoly parse_t_poly(const std::string& text, uint32_t p) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty coefficient text");
    FpPoly acc(p);
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t nxt = s.find('+', pos);
        std::string term = s.substr(pos, nxt == std::string::npos ? std::string::npos : nxt - pos);
        pos = nxt == std::string::npos ? s.size() + 1 : nxt + 1;
        if (term.empty()) throw ParseError("empty term in coefficient '" + text + "'");

        uint64_t cv = 1;
        std::string tpart = term;
        size_t star = term.find('*');
        if (star != std::string::npos) {
            cv = parse_uint(term.substr(0, star), "coefficient");
            tpart = term.substr(star + 1);
        } else if (std::isdigit(static_cast<unsigned char>(term[0]))) {
            // bare integer term
            acc = acc + FpPoly::constant(Fp(parse_uint(term, "coefficient"), p));
            continue;
        }
        if (tpart.empty() || tpart[0] != 't')
            throw ParseError("expected t-power in term '" + term + "'");
        uint64_t k = 1;
        if (tpart.size() > 1) {
            if (tpart[1] != '^') throw ParseError("expected '^' in term '" + term + "'");
            k = parse_uint(tpart.substr(2), "exponent");
            if (k > 10000) throw ParseError("t-exponent too large");
        }
        acc = acc + FpPoly::t_power(p, static_cast<int>(k), cv);
    }
    return acc;
}

SeriesSpec parse_series_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("series spec must be a JSON object");
    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (key != "schema" && key != "p" && key != "prec" && key != "coeffs" &&
            key != "valued")
            throw ParseError("unknown field '" + key + "' in series spec");
    }
    if (j.contains("schema")) {
        if (!j["schema"].is_number_integer() || j["schema"].get<int64_t>() != 1)
            throw ParseError("unsupported schema version");
    }
    if (!j.contains("p") || !j["p"].is_number_integer())
        throw ParseError("field 'p' must be an integer");
    int64_t pv = j["p"].get<int64_t>();
    if (pv < 2 || pv > 1000000 || !is_prime_u32(static_cast<uint32_t>(pv)))
        throw ParseError("field 'p' must be prime");
    SeriesSpec s;
    s.p = static_cast<uint32_t>(pv);
    if (!j.contains("prec") || !j["prec"].is_number_integer())
        throw ParseError("field 'prec' must be an integer");
    int64_t prec = j["prec"].get<int64_t>();
    if (prec < 1 || prec > 100000) throw ParseError("field 'prec' out of range");
    s.prec = static_cast<int>(prec);
    if (j.contains("valued")) {
        if (!j["valued"].is_boolean()) throw ParseError("field 'valued' must be a boolean");
        s.valued = j["valued"].get<bool>();
    }
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        throw ParseError("field 'coeffs' must be an array");
    int64_t prev = 1;
    for (const auto& entry : j["coeffs"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer())
            throw ParseError("coefficient entries must be [degree, value] pairs");
        SpecCoeff c;
        c.degree = entry[0].get<int64_t>();
        if (c.degree < 2) throw InvariantViolation("coefficient degree below 2");
        if (c.degree == prev) throw InvariantViolation("duplicate coefficient degree");
        if (c.degree < prev) throw InvariantViolation("coefficient degrees must increase");
        if (c.degree > s.prec) throw InvariantViolation("coefficient degree exceeds prec");
        prev = c.degree;
        if (entry[1].is_number_integer()) {
            c.value = Fp::from_int(entry[1].get<int64_t>(), s.p).value();
        } else if (entry[1].is_string()) {
            if (!s.valued)
                throw ParseError("textual coefficient in a plain series spec");
            c.is_poly = true;
            c.poly = entry[1].get<std::string>();
            parse_t_poly(c.poly, s.p); // validate eagerly
        } else {
            throw ParseError("coefficient value must be an integer or a string");
        }
        s.coeffs.push_back(std::move(c));
    }
    return s;
}

SeriesSpec parse_series_spec_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_series_spec(j);
}

nlohmann::json series_spec_to_json(const SeriesSpec& s) {
    nlohmann::json j;
    j["schema"] = 1;
    j["p"] = s.p;
    j["prec"] = s.prec;
    if (s.valued) j["valued"] = true;
    auto arr = nlohmann::json::array();
    for (const auto& c : s.coeffs) {
        if (c.is_poly)
            arr.push_back(nlohmann::json::array({c.degree, c.poly}));
        else
            arr.push_back(nlohmann::json::array({c.degree, c.value}));
    }
    j["coeffs"] = arr;
    return j;
}

WildSeries<Fp> spec_to_wild(const SeriesSpec& s) {
    if (s.valued) throw ParseError("series spec is valued; expected plain coefficients");
    auto f = TruncatedSeries<Fp>::identity(Fp(0, s.p), s.prec);
    for (const auto& c : s.coeffs)
        f.set_coeff(static_cast<int>(c.degree), Fp(c.value, s.p));
    return WildSeries<Fp>(std::move(f));
}

ValuedPoly spec_to_valued(const SeriesSpec& s) {
    ValuedPoly f = ValuedPoly::identity_z(s.p);
    for (const auto& c : s.coeffs) {
        RationalFunction v = c.is_poly
                                 ? RationalFunction::from_poly(parse_t_poly(c.poly, s.p))
                                 : RationalFunction::constant(Fp(c.value, s.p));
        f.set_coeff(c.degree, std::move(v));
    }
    return f;
}

SeriesSpec spec_from_wild(const WildSeries<Fp>& f) {
    SeriesSpec s;
    s.p = f.char_p();
    s.prec = f.prec();
    for (int k = 2; k <= f.prec(); ++k) {
        Fp c = f.series().coeff(k);
        if (!c.is_zero()) s.coeffs.push_back({k, false, c.value(), {}});
    }
    return s;
}

SeriesSpec spec_from_valued(const ValuedPoly& f, int prec) {
    SeriesSpec s;
    s.p = f.modulus();
    s.prec = prec;
    s.valued = true;
    for (int64_t k = 2; k <= f.degree(); ++k) {
        RationalFunction c = f.coeff(k);
        if (!c.is_zero()) s.coeffs.push_back({k, true, 0, c.to_string()});
    }
    return s;
}

std::string series_to_string(const TruncatedSeries<Fp>& f) {
    std::string s;
    for (int k = 0; k <= f.prec(); ++k) {
        Fp c = f.coeff(k);
        if (c.is_zero()) continue;
        if (!s.empty()) s += " + ";
        if (c.value() != 1 || k == 0) {
            s += std::to_string(c.value());
            if (k > 0) s += "*";
        }
        if (k == 1) s += "z";
        else if (k > 1) s += "z^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
}

nlohmann::json order_bound_json(const OrderBound& b) {
    nlohmann::json j;
    j["resolved"] = b.is_finite();
    j["value"] = b.value;
    return j;
}

nlohmann::json index_report_json(const IndexReport<Fp>& rep, uint32_t p) {
    nlohmann::json j;
    j["schema"] = 1;
    j["p"] = p;
    j["q"] = rep.q;
    j["lambda"] = rep.lambda.ells;
    j["r"] = rep.lambda.r();
    auto arr = nlohmann::json::array();
    for (const auto& v : rep.pind) arr.push_back(v.value());
    j["pind"] = arr;
    j["ind"] = rep.ind.value();
    j["resit"] = rep.resit ? nlohmann::json(rep.resit->value()) : nlohmann::json(nullptr);
    j["smallest_j"] =
        rep.smallest.j ? nlohmann::json(*rep.smallest.j) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json profile_json(const RamificationProfile<Fp>& prof) {
    nlohmann::json j;
    j["schema"] = 1;
    j["p"] = prof.p;
    j["q"] = prof.q;
    j["sen_ok"] = prof.sen_ok;
    j["lower_bound_ok"] = prof.lower_bound_ok;
    auto arr = nlohmann::json::array();
    for (size_t n = 0; n < prof.levels.size(); ++n) {
        nlohmann::json lev;
        lev["n"] = n;
        if (prof.levels[n].i.is_finite()) {
            lev["i"] = prof.levels[n].i.value;
            if (prof.levels[n].delta) lev["delta"] = prof.levels[n].delta->value();
        } else {
            // payload prec+1 means the iterate equals z through z^prec
            lev["i_min"] = prof.levels[n].i.value - 1;
        }
        arr.push_back(lev);
    }
    j["levels"] = arr;
    return j;
}

nlohmann::json verdict_json(const Verdict<Fp>& v) {
    nlohmann::json j;
    j["schema"] = 1;
    j["q"] = v.q;
    j["s"] = v.s;
    j["smallest_j"] =
        v.smallest.j ? nlohmann::json(*v.smallest.j) : nlohmann::json(nullptr);
    switch (v.kind) {
        case VerdictKind::ByIndex: j["kind"] = "by-index"; break;
        case VerdictKind::QRamified: j["kind"] = "q-ramified"; break;
        case VerdictKind::Unclassified: j["kind"] = "unclassified"; break;
    }
    j["predicted"] = v.predicted;
    j["match"] = v.match;
    j["profile"] = profile_json(v.profile);
    return j;
}

nlohmann::json normal_form_json(const NormalForm<Fp>& nf, int j, int64_t ell, int prec) {
    nlohmann::json out;
    out["schema"] = 1;
    out["j"] = j;
    out["ell"] = ell;
    out["alpha"] = nf.alpha.value();
    out["beta"] = nf.beta.value();
    out["pind_j"] = (nf.beta * (nf.alpha * nf.alpha).inverse()).value();
    out["g"] = series_spec_to_json(spec_from_wild(nf.g));
    SeriesSpec hs;
    hs.p = nf.g.char_p();
    hs.prec = prec;
    for (int k = 2; k <= nf.h.prec(); ++k) {
        Fp c = nf.h.coeff(k);
        if (!c.is_zero()) hs.coeffs.push_back({k, false, c.value(), {}});
    }
    out["h"] = series_spec_to_json(hs);
    return out;
}

nlohmann::json ratio_json(const Ratio& r) {
    return nlohmann::json::array({r.num, r.den});
}

nlohmann::json polygon_json(const NewtonPolygon& np) {
    nlohmann::json j;
    auto verts = nlohmann::json::array();
    for (const auto& [x, y] : np.vertices) verts.push_back(nlohmann::json::array({x, y}));
    j["vertices"] = verts;
    auto segs = nlohmann::json::array();
    for (const auto& s : np.segments) {
        nlohmann::json seg;
        seg["slope"] = ratio_json(s.slope);
        seg["length"] = s.length;
        segs.push_back(seg);
    }
    j["segments"] = segs;
    j["zero_root_multiplicity"] = np.zero_root_multiplicity;
    return j;
}

namespace {

nlohmann::json roots_json(const std::vector<RootValuation>& roots) {
    auto arr = nlohmann::json::array();
    for (const auto& r : roots) {
        nlohmann::json e;
        e["valuation"] = ratio_json(r.valuation);
        e["multiplicity"] = r.multiplicity;
        arr.push_back(e);
    }
    return arr;
}

} // namespace

nlohmann::json fixed_report_json(const FixedPointReport& rep) {
    nlohmann::json j;
    j["q"] = rep.q;
    j["v_a"] = rep.v_a;
    j["polygon"] = polygon_json(rep.polygon);
    j["roots"] = roots_json(rep.roots);
    j["pass"] = rep.pass;
    return j;
}

nlohmann::json periodic_report_json(const PeriodicPointReport& rep) {
    nlohmann::json j;
    j["q"] = rep.q;
    j["i1"] = rep.i1;
    j["pind1"] = rep.pind1.to_string();
    j["v_a"] = rep.v_a;
    j["v_pind"] = rep.v_pind;
    j["bound"] = ratio_json(rep.bound);
    j["polygon"] = polygon_json(rep.polygon);
    j["roots"] = roots_json(rep.roots);
    j["pass"] = rep.pass;
    j["delta_applicable"] = rep.delta_applicable;
    j["delta_ok"] = rep.delta_ok;
    return j;
}

std::string csv_profile_header(int n_max) {
    std::string s = "q,ell";
    for (int n = 0; n <= n_max; ++n) s += ",i_" + std::to_string(n);
    return s;
}

std::string csv_profile_row(const RamificationProfile<Fp>& prof, int64_t ell) {
    std::string s = std::to_string(prof.q) + "," + std::to_string(ell);
    for (const auto& lev : prof.levels) {
        if (lev.i.is_finite())
            s += "," + std::to_string(lev.i.value);
        else
            s += ",>=" + std::to_string(lev.i.value - 1);
    }
    return s;
}

} // namespace wildram
