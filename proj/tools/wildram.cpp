#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wildram/spec_io.hpp"
#include "wildram/suites.hpp"

using namespace wildram;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_index(const std::string& path, int jopt) {
    auto spec = parse_series_spec_text(read_file(path));
    auto f = spec_to_wild(spec);
    std::cerr << "f = " << series_to_string(f.series()) << " over F_" << spec.p
              << ", prec " << spec.prec << "\n";
    if (jopt > 0) {
        const LambdaSet L = lambda_set(f.q_checked(), f.char_p());
        if (jopt > L.r()) throw UsageError("--j exceeds the index count r=" + std::to_string(L.r()));
        nlohmann::json out;
        out["schema"] = 1;
        out["p"] = spec.p;
        out["q"] = f.q_checked();
        out["j"] = jopt;
        out["ell"] = L.ell(jopt);
        out["pind"] = partial_index(f, jopt).value();
        emit(out);
        return 0;
    }
    emit(index_report_json(index_report(f), spec.p));
    return 0;
}

int cmd_ramify(const std::string& path, int n_max, bool csv) {
    auto spec = parse_series_spec_text(read_file(path));
    auto f = spec_to_wild(spec);
    auto prof = lower_ramification(f, n_max);
    if (csv) {
        std::cout << csv_profile_header(n_max) << "\n"
                  << csv_profile_row(prof, prof.q % prof.p) << "\n";
    } else {
        nlohmann::json out = profile_json(prof);
        try {
            out["classification"] = verdict_json(classify(f, n_max));
        } catch (const Error& e) {
            out["classification"] = nullptr;
            out["classification_skip"] = e.what();
        }
        emit(out);
    }
    std::cerr << "q=" << prof.q << " levels=" << prof.levels.size() - 1
              << " sen_ok=" << prof.sen_ok << " lower_bound_ok=" << prof.lower_bound_ok << "\n";
    return prof.sen_ok && prof.lower_bound_ok ? 0 : 1;
}

int cmd_normal_form(const std::string& path, int j) {
    auto spec = parse_series_spec_text(read_file(path));
    auto f = spec_to_wild(spec);
    auto nf = normal_form(f, j);
    const LambdaSet L = lambda_set(f.q_checked(), f.char_p());
    emit(normal_form_json(nf, j, L.ell(j), spec.prec));
    std::cerr << "g = " << series_to_string(nf.g.series().truncated(
                     std::min<int>(spec.prec, static_cast<int>(f.q_checked() + L.ell(j)) + 1)))
              << " + ...\n";
    return 0;
}

int cmd_newton(const std::string& path) {
    auto spec = parse_series_spec_text(read_file(path));
    auto f = spec_to_valued(spec);
    nlohmann::json out;
    out["schema"] = 1;
    auto fx = fixed_point_valuations(f);
    out["fixed"] = fixed_report_json(fx);
    bool ok = fx.pass;
    try {
        auto pb = periodic_point_bound(f);
        out["periodic"] = periodic_report_json(pb);
        ok = ok && pb.pass && (!pb.delta_applicable || pb.delta_ok);
    } catch (const Error& e) {
        out["periodic"] = nullptr;
        out["periodic_skip"] = e.what();
    }
    emit(out);
    std::cerr << "q=" << fx.q << " v(a)=" << fx.v_a << " bounds " << (ok ? "hold" : "VIOLATED")
              << "\n";
    return ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, uint64_t seed, int64_t samples,
               const std::string& json_out, bool csv) {
    nlohmann::json params = nlohmann::json::object();
    if (samples >= 0) params["samples"] = samples;
    auto out = run_suite(suite, seed, params);
    if (csv) {
        if (out.csv_header.empty()) throw UsageError("suite '" + suite + "' has no CSV projection");
        std::cout << out.csv_header << "\n";
        for (const auto& row : out.csv_rows) std::cout << row << "\n";
    } else {
        emit(out.report);
    }
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        if (!f) throw UsageError("cannot write '" + json_out + "'");
        f << out.report.dump(2) << "\n";
    }
    std::cerr << suite << ": " << out.report["samples"] << " samples, " << out.report["pass"]
              << " pass, " << out.report["fail"] << " fail, " << out.report["law_violations"]
              << " law violations [" << out.wall_seconds << " s]\n";
    return out.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of wildly ramified power series over prime fields"};
    app.require_subcommand(1);

    std::string spec_path, suite, json_out;
    int jopt = 0, n_max = 1;
    uint64_t seed = 0;
    int64_t samples = -1;
    bool csv = false;

    auto* ci = app.add_subcommand("index", "residue indices pind_j and ind of a series");
    ci->add_option("spec", spec_path, "series spec JSON file")->required();
    ci->add_option("--j", jopt, "report only the j-th partial index");

    auto* cr = app.add_subcommand("ramify", "lower ramification numbers by direct iteration");
    cr->add_option("spec", spec_path, "series spec JSON file")->required();
    cr->add_option("--n-max", n_max, "levels to compute")->required();
    cr->add_flag("--csv", csv, "flat q,ell,i_0..i_n row instead of JSON");

    auto* cn = app.add_subcommand("normal-form", "conjugate to z(1+az^q+bz^{q+l_j}) + tail");
    cn->add_option("spec", spec_path, "series spec JSON file")->required();
    cn->add_option("--j", jopt, "index level j (needs pind_i = 0 for i < j)")->required();

    auto* cw = app.add_subcommand("newton", "Newton-polygon valuation bounds over F_p(t)");
    cw->add_option("spec", spec_path, "series spec JSON file")->required();

    auto* cv = app.add_subcommand("verify", "run a deterministic verification suite");
    cv->add_option("suite", suite, "one of the named suites")->required();
    cv->add_option("--seed", seed, "PRNG seed (default 0)");
    cv->add_option("--samples", samples, "override the suite's sample count");
    cv->add_option("--json", json_out, "also write the report to this file");
    cv->add_flag("--csv", csv, "CSV projection instead of JSON, where available");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ci->parsed()) return cmd_index(spec_path, jopt);
        if (cr->parsed()) return cmd_ramify(spec_path, n_max, csv);
        if (cn->parsed()) return cmd_normal_form(spec_path, jopt);
        if (cw->parsed()) return cmd_newton(spec_path);
        if (cv->parsed()) return cmd_verify(suite, seed, samples, json_out, csv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
