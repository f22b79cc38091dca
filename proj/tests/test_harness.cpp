#include "doctest.h"

#include "helpers.hpp"
#include "wildram/spec_io.hpp"
#include "wildram/suites.hpp"

using namespace wildram;
using nlohmann::json;
using testutil::wild;

TEST_CASE("t polynomial grammar") {
    CHECK(parse_t_poly("1+2*t+t^3", 5) ==
          FpPoly::constant(Fp(1, 5)) + FpPoly::t_power(5, 1, 2) + FpPoly::t_power(5, 3));
    CHECK(parse_t_poly("t", 3) == FpPoly::t_power(3, 1));
    CHECK(parse_t_poly(" t^2 + 1 ", 3) == FpPoly::t_power(3, 2) + FpPoly::constant(Fp(1, 3)));
    CHECK(parse_t_poly("0", 3).is_zero());
    CHECK(parse_t_poly("t+2*t", 3).is_zero()); // repeated powers accumulate mod p
    CHECK_THROWS_AS(parse_t_poly("", 3), ParseError);
    CHECK_THROWS_AS(parse_t_poly("t^", 3), ParseError);
    CHECK_THROWS_AS(parse_t_poly("1-t", 3), ParseError);
    CHECK_THROWS_AS(parse_t_poly("2t", 3), ParseError);
    CHECK_THROWS_AS(parse_t_poly("t**2", 3), ParseError);
    CHECK_THROWS_AS(parse_t_poly("x", 3), ParseError);
    CHECK_THROWS_AS(parse_t_poly("t^10001", 3), ParseError);
}

TEST_CASE("series specs parse and normalize") {
    auto spec = parse_series_spec_text(
        R"({"schema":1,"p":3,"prec":8,"coeffs":[[5,1],[6,-4]]})");
    CHECK(spec.p == 3);
    CHECK(spec.prec == 8);
    CHECK(!spec.valued);
    auto f = spec_to_wild(spec);
    CHECK(f.q_checked() == 4);
    CHECK(f.series().coeff(6) == Fp(2, 3)); // -4 reduced mod 3

    auto round = series_spec_to_json(spec_from_wild(f));
    CHECK(round == json::parse(R"({"schema":1,"p":3,"prec":8,"coeffs":[[5,1],[6,2]]})"));
}

TEST_CASE("valued series specs") {
    auto spec = parse_series_spec_text(
        R"({"schema":1,"p":3,"prec":9,"valued":true,"coeffs":[[5,"t"],[7,"1+2*t"]]})");
    CHECK(spec.valued);
    auto f = spec_to_valued(spec);
    CHECK(f.coeff(5) == RationalFunction::from_poly(FpPoly::t_power(3, 1)));
    CHECK(f.coeff(7) == RationalFunction::from_poly(
                            FpPoly::constant(Fp(1, 3)) + FpPoly::t_power(3, 1, 2)));
    CHECK_THROWS_AS(spec_to_wild(spec), ParseError);

    auto round = series_spec_to_json(spec_from_valued(f, 9));
    CHECK(round == json::parse(
        R"({"schema":1,"p":3,"prec":9,"valued":true,"coeffs":[[5,"t"],[7,"1+2*t"]]})"));
}

TEST_CASE("malformed specs are rejected") {
    auto parse = [](const char* s) { return parse_series_spec_text(s); };
    CHECK_THROWS_AS(parse(R"({"p":4,"prec":5,"coeffs":[]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"p":1,"prec":5,"coeffs":[]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"prec":5,"coeffs":[]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"p":3,"coeffs":[]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"p":3,"prec":5,"coeffs":[],"extra":1})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"schema":2,"p":3,"prec":5,"coeffs":[]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"p":3,"prec":5,"coeffs":[[2,1.5]]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"p":3,"prec":5,"coeffs":[[2]]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"p":3,"prec":5,"coeffs":[[2,"t"]]})"), ParseError);
    CHECK_THROWS_AS(parse(R"([1,2,3])"), ParseError);
    CHECK_THROWS_AS(parse(R"({"p":3,"prec":)"), ParseError);
    CHECK_THROWS_AS(parse(R"({"p":3,"prec":5,"coeffs":[[1,1]]})"), InvariantViolation);
    CHECK_THROWS_AS(parse(R"({"p":3,"prec":5,"coeffs":[[2,1],[2,1]]})"), InvariantViolation);
    CHECK_THROWS_AS(parse(R"({"p":3,"prec":5,"coeffs":[[4,1],[3,1]]})"), InvariantViolation);
    CHECK_THROWS_AS(parse(R"({"p":3,"prec":5,"coeffs":[[6,1]]})"), InvariantViolation);
}

TEST_CASE("human readable series") {
    CHECK(series_to_string(wild(3, {0, 1, 0, 0, 0, 1, 2}).series()) == "z + z^5 + 2*z^6");
    CHECK(series_to_string(TruncatedSeries<Fp>::zeros(Fp(0, 3), 2)) == "0");
}

TEST_CASE("profile serialization distinguishes bounds from values") {
    auto f = wild(3, {0, 1, 0, 0, 0, 1}); // z + z^5 at prec 5, second level unresolved
    auto prof = lower_ramification(f, 1);
    auto j = profile_json(prof);
    REQUIRE(j["levels"].size() == 2);
    CHECK(j["levels"][0]["n"] == 0);
    CHECK(j["levels"][0]["i"] == 4);
    CHECK(j["levels"][1]["i_min"] == 5);
    CHECK(!j["levels"][1].contains("i"));

    CHECK(csv_profile_header(1) == "q,ell,i_0,i_1");
    auto row = csv_profile_row(prof, 1);
    CHECK(row == "4,1,4,>=5");
}

TEST_CASE("verification suites are deterministic") {
    json params{{"samples", 5}};
    auto a = run_suite("powersarezero", 123, params);
    auto b = run_suite("powersarezero", 123, params);
    CHECK(a.all_pass);
    CHECK(a.report.dump(2) == b.report.dump(2));
    auto c = run_suite("powersarezero", 124, params);
    CHECK(c.report["seed"] == 124);
    CHECK_THROWS_AS(run_suite("no-such-suite", 1, json()), UnknownSuite);
    CHECK_THROWS_AS(run_suite("powersarezero", 1, json{{"samples", "x"}}), UsageError);
}

TEST_CASE("every suite passes on a small budget") {
    struct Cfg {
        const char* name;
        json params;
    };
    const std::vector<Cfg> cfgs = {
        {"closed-formula", {{"samples", 20}}},
        {"conj-invariance", {{"samples", 30}}},
        {"iter-residue", {{"samples", 20}}},
        {"criterion1", {{"samples", 5}}},
        {"criterion2", {{"samples", 2}}},
        {"q-ramified", {{"samples", 6}}},
        {"sen-lower-bound", {{"samples", 6}}},
        {"main-lemma", {{"cases", json::array({json::array({3, 4, 1})})}}},
        {"delta-short",
         {{"cases_lt", json::array({json::array({3, 4, 1})})},
          {"cases_eq", json::array({json::array({3, 4, 4})})}}},
        {"powersarezero", {{"samples", 10}}},
        {"newton-bounds", {{"samples", 10}}},
    };
    for (const auto& cfg : cfgs) {
        INFO("suite: " << cfg.name);
        auto out = run_suite(cfg.name, 7, cfg.params);
        CHECK(out.all_pass);
        CHECK(out.report["fail"] == 0);
        CHECK(out.report["law_violations"] == 0);
        CHECK(out.report["schema"] == 1);
        CHECK(out.report["suite"] == cfg.name);
    }
    for (const auto& name : suite_names()) {
        bool known = false;
        for (const auto& cfg : cfgs) known = known || name == cfg.name;
        CHECK(known); // the small-budget sweep covers every registered suite
    }
}

TEST_CASE("criterion suites expose csv projections") {
    auto out = run_suite("criterion1", 3, json{{"samples", 2}});
    CHECK(!out.csv_header.empty());
    CHECK(out.csv_header.rfind("q,ell", 0) == 0);
    CHECK(!out.csv_rows.empty());
}
