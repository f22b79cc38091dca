#pragma once

/// JSON input format for series and JSON report shapes for the CLI. All
/// reports are serialized with sorted keys and no wall-clock fields, so a
/// given input produces byte-identical output on every run.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wildram/indices.hpp"
#include "wildram/newton.hpp"

namespace wildram {

/// One (degree, coefficient) entry of f(z) - z. Plain inputs carry a value
/// in [0, p); valued inputs carry a polynomial in t as text, e.g. "2+t^3".
struct SpecCoeff {
    int64_t degree = 0;
    bool is_poly = false;
    int64_t value = 0;
    std::string poly;
};

struct SeriesSpec {
    uint32_t p = 0;
    int prec = 0;
    bool valued = false;
    std::vector<SpecCoeff> coeffs;
};

/// Parses "c0+c1*t+c2*t^2" style text. Terms are INT, INT*t, INT*t^K, t
/// or t^K joined by '+'; whitespace is ignored; repeated powers add up.
FpPoly parse_t_poly(const std::string& text, uint32_t p);

SeriesSpec parse_series_spec(const nlohmann::json& j);
SeriesSpec parse_series_spec_text(const std::string& text);
nlohmann::json series_spec_to_json(const SeriesSpec& s);

WildSeries<Fp> spec_to_wild(const SeriesSpec& s);
ValuedPoly spec_to_valued(const SeriesSpec& s);
SeriesSpec spec_from_wild(const WildSeries<Fp>& f);
SeriesSpec spec_from_valued(const ValuedPoly& f, int prec);

/// Short human form like "z + z^5 + 2*z^6", for log lines.
std::string series_to_string(const TruncatedSeries<Fp>& f);

nlohmann::json order_bound_json(const OrderBound& b);
nlohmann::json index_report_json(const IndexReport<Fp>& rep, uint32_t p);
nlohmann::json profile_json(const RamificationProfile<Fp>& prof);
nlohmann::json verdict_json(const Verdict<Fp>& v);
nlohmann::json normal_form_json(const NormalForm<Fp>& nf, int j, int64_t ell, int prec);
nlohmann::json ratio_json(const Ratio& r);
nlohmann::json polygon_json(const NewtonPolygon& np);
nlohmann::json fixed_report_json(const FixedPointReport& rep);
nlohmann::json periodic_report_json(const PeriodicPointReport& rep);

/// CSV row "q,ell,i_0,...,i_n" (unresolved levels print >=B with the sound
/// bound B); the matching header is csv_profile_header(n_max).
std::string csv_profile_header(int n_max);
std::string csv_profile_row(const RamificationProfile<Fp>& prof, int64_t ell);

} // namespace wildram
