#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "fptzone/classify.hpp"
#include "fptzone/errors.hpp"
#include "fptzone/report.hpp"
#include "fptzone/simulate.hpp"

using namespace fptzone;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string doc(const char* tilde, const char* profile_json = "null",
                const char* ln_a = "null") {
    std::string s = R"({"mu": 0.0, "sigma": 1.0, "v0": 1.0, "k": 0.36787944117144233,)";
    s += std::string(R"("tilde": ")") + tilde + "\", \"ln_a\": " + ln_a +
         ", \"profile\": " + profile_json + "}";
    return s;
}

}  // namespace

TEST_CASE("barrier spec parses from json") {
    BarrierSpec spec = parse_barrier_spec(doc("2*sqrt(t)"));
    REQUIRE(spec.params().sigma == 1.0);
    REQUIRE(spec.q() == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(spec.tilde_effective(4.0) == Catch::Approx(4.0).epsilon(1e-14));
    REQUIRE(!spec.profile().has_value());
    REQUIRE(!spec.ln_inflation().has_value());
}

TEST_CASE("barrier spec round-trips through render") {
    std::string docs[] = {
        doc("2*sqrt(t)"),
        doc("0"),
        doc("t - 2*sqrt(t)", R"({"kind": "simple", "term": {"kind": "linear", "c": 1.0}})"),
        doc("-t*abs(sin(t))",
            R"({"kind": "oscillating", "lower": {"kind": "linear", "c": -1.0},
                "upper": {"kind": "constant", "c": 0.0}})"),
        doc("sqrt(t)", "null", R"("0.1*t")"),
    };
    for (const auto& d : docs) {
        BarrierSpec a = parse_barrier_spec(d);
        std::string rendered = render_barrier_spec(a);
        BarrierSpec b = parse_barrier_spec(rendered);
        INFO(rendered);
        REQUIRE(a.params().mu == b.params().mu);
        REQUIRE(a.params().sigma == b.params().sigma);
        REQUIRE(a.params().v0 == b.params().v0);
        REQUIRE(a.params().k == b.params().k);
        REQUIRE(a.tilde() == b.tilde());
        REQUIRE(a.profile().has_value() == b.profile().has_value());
        REQUIRE(a.ln_inflation().has_value() == b.ln_inflation().has_value());
        if (a.ln_inflation()) REQUIRE(*a.ln_inflation() == *b.ln_inflation());
        if (a.profile()) {
            REQUIRE(a.profile()->kind == b.profile()->kind);
            REQUIRE(a.profile()->term.kind == b.profile()->term.kind);
            REQUIRE(a.profile()->term.c == b.profile()->term.c);
        }
    }
}

TEST_CASE("anchor fold happens at parse time") {
    // tilde(0) = -1 folds into the anchor; re-rendered document keeps the
    // canonical form and parses back to an equal spec
    BarrierSpec spec = parse_barrier_spec(doc("sqrt(t) - 1"));
    REQUIRE(spec.tilde_effective(0.0) == 0.0);
    REQUIRE(spec.params().k ==
            Catch::Approx(0.36787944117144233 * std::exp(-1.0)).epsilon(1e-13));
    BarrierSpec again = parse_barrier_spec(render_barrier_spec(spec));
    REQUIRE(again.params().k == Catch::Approx(spec.params().k).epsilon(1e-15));
}

TEST_CASE("custom limits accept inf encoding both ways") {
    const char* profile = R"({"kind": "custom_limits", "limits": {
        "i_minus": "inf", "i_plus": 0.0, "s_minus": "inf", "s_plus": 0.0,
        "sbar0": 0.5, "ibar": [[0.0, "inf"], [0.5, 1.25], [1.0, 0.0]]}})";
    BarrierSpec spec = parse_barrier_spec(doc("2*sqrt(t)", profile));
    REQUIRE(spec.profile().has_value());
    auto lim = limits_from_profile(*spec.profile(), spec.params());
    REQUIRE(lim.i_minus == kInf);
    REQUIRE(lim.s_plus == 0.0);
    REQUIRE(lim.sbar0 == 0.5);
    REQUIRE(lim.ibar.size() == 3);
    REQUIRE(lim.ibar[0].second == kInf);
    REQUIRE(lim.ibar[1].second == 1.25);

    // renders back with the string encoding intact
    std::string rendered = render_barrier_spec(spec);
    auto j = json::parse(rendered);
    REQUIRE(j["profile"]["limits"]["i_minus"] == "inf");
    BarrierSpec back = parse_barrier_spec(rendered);
    auto lim2 = limits_from_profile(*back.profile(), back.params());
    REQUIRE(lim2.i_minus == kInf);
    REQUIRE(lim2.ibar == lim.ibar);
}

TEST_CASE("malformed documents raise input errors") {
    REQUIRE_THROWS_AS(parse_barrier_spec("not json"), InputError);
    REQUIRE_THROWS_AS(parse_barrier_spec("[1, 2]"), InputError);
    REQUIRE_THROWS_AS(parse_barrier_spec(R"({"mu": 0.0})"), InputError);
    REQUIRE_THROWS_AS(parse_barrier_spec(
        R"({"mu": 0, "sigma": "wide", "v0": 1, "k": 0.5, "tilde": "0", "ln_a": null, "profile": null})"),
        InputError);
    // structurally valid json, invalid expression: the expression error surfaces
    REQUIRE_THROWS_AS(parse_barrier_spec(doc("2**t")), SyntaxError);
    // structurally valid json, invalid parameters
    REQUIRE_THROWS_AS(parse_barrier_spec(
        R"({"mu": 0, "sigma": 1, "v0": 1, "k": 2.0, "tilde": "0", "ln_a": null, "profile": null})"),
        InvalidParams);
    // unknown profile kind
    REQUIRE_THROWS_AS(parse_barrier_spec(doc("0", R"({"kind": "mystery"})")), InputError);
}

TEST_CASE("zone report carries the zone and the limits") {
    BarrierSpec spec = parse_barrier_spec(doc("2*sqrt(t)"));
    auto lim = limits_from_profile(AsymptoticProfile::sqrt_t(2.0), spec.params());
    auto zone = classify(lim);
    auto j = json::parse(render_zone_report(spec, zone, lim));
    REQUIRE(j["zone"] == "Red");
    REQUIRE(j["heuristic"] == false);
    REQUIRE(j["limits"]["i_minus"] == "inf");
    REQUIRE(j["limits"]["ibar"].is_array());
    REQUIRE(j["basis"].is_array());
    REQUIRE(!j["basis"].empty());
}

TEST_CASE("bound reports encode infinite values as a string") {
    BarrierSpec spec = parse_barrier_spec(doc("0"));
    BoundReport inf_rep;
    inf_rep.kind = BoundKind::ExactMean;
    inf_rep.value = kInf;
    BoundReport fin_rep;
    fin_rep.kind = BoundKind::UpperThm;
    fin_rep.value = 2.5;
    fin_rep.t_switch = 1.0;

    auto j = json::parse(render_bound_reports(spec, {inf_rep, fin_rep}, {"note a"}, 0.25));
    REQUIRE(j["bounds"][0]["kind"] == "exact_mean");
    REQUIRE(j["bounds"][0]["value"] == "inf");
    REQUIRE(j["bounds"][1]["kind"] == "upper_thm");
    REQUIRE(j["bounds"][1]["value"] == 2.5);
    REQUIRE(j["bounds"][1]["t_switch"] == 1.0);
    REQUIRE(j["notes"][0] == "note a");
    REQUIRE(j["crossing_prob"] == 0.25);
}

TEST_CASE("bound kind names are stable") {
    REQUIRE(std::string(bound_kind_name(BoundKind::ExactMean)) == "exact_mean");
    REQUIRE(std::string(bound_kind_name(BoundKind::ExactLinear)) == "exact_linear");
    REQUIRE(std::string(bound_kind_name(BoundKind::UpperThm)) == "upper_thm");
    REQUIRE(std::string(bound_kind_name(BoundKind::UpperPsiMin)) == "upper_psi_min");
    REQUIRE(std::string(bound_kind_name(BoundKind::UpperPsiChord)) == "upper_psi_chord");
    REQUIRE(std::string(bound_kind_name(BoundKind::LambertUpper)) == "lambert_upper");
    REQUIRE(std::string(bound_kind_name(BoundKind::InverseUpper)) == "inverse_upper");
    REQUIRE(std::string(bound_kind_name(BoundKind::InverseLower)) == "inverse_lower");
}

TEST_CASE("simulation report and csv") {
    BarrierSpec spec = parse_barrier_spec(doc("0"));
    SimConfig cfg;
    cfg.n_paths = 200;
    cfg.dt = 0.01;
    cfg.horizon = 2.0;
    cfg.seed = 42;
    auto samples = simulate_fpt(spec, cfg);
    auto est = estimate(samples);

    auto j = json::parse(render_simulation_report(spec, samples, est));
    REQUIRE(j["config"]["n_paths"] == 200);
    REQUIRE(j["estimate"]["n_paths"] == 200);
    double survival = j["estimate"]["survival"].get<double>();
    REQUIRE(survival >= 0.0);
    REQUIRE(survival <= 1.0);
    REQUIRE(j["estimate"].contains("truncated_mean"));

    std::string csv = render_samples_csv(samples);
    REQUIRE(csv.rfind("path_id,crossed,time", 0) == 0);
    std::size_t rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
    REQUIRE(rows == 201);  // header + one row per path
}

TEST_CASE("error rendering is single-line json") {
    std::string line = render_error("input_error", "could not open file: x.json");
    REQUIRE(line.find('\n') == std::string::npos);
    auto j = json::parse(line);
    REQUIRE(j["error"] == "input_error");
    REQUIRE(j["detail"].get<std::string>().find("x.json") != std::string::npos);
}
