#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fptzone/classify.hpp"
#include "fptzone/errors.hpp"
#include "fptzone/report.hpp"

using namespace fptzone;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GbmParams unit_params() {
    GbmParams p;
    p.sigma = 1.0;
    p.v0 = 1.0;
    p.k = std::exp(-1.0);
    return p;
}

// A consistent limit set built from scalar values; ibar takes its eps = 0
// value and a (not larger) value shared by all positive eps.
AsymptoticLimits limits_of(double i_minus, double i_plus, double s_minus, double s_plus,
                           double ibar0, double ibar_pos, double sbar0) {
    AsymptoticLimits lim;
    lim.i_minus = i_minus;
    lim.i_plus = i_plus;
    lim.s_minus = s_minus;
    lim.s_plus = s_plus;
    lim.sbar0 = sbar0;
    for (double eps : default_epsilon_grid(1.0)) {
        lim.ibar.emplace_back(eps, eps == 0.0 ? ibar0 : ibar_pos);
    }
    return lim;
}

}  // namespace

TEST_CASE("zone names round-trip") {
    for (Zone z : {Zone::Red, Zone::Yellow, Zone::Green, Zone::TwilightMeanUnknown,
                   Zone::TwilightFinitenessUnknown, Zone::Dark}) {
        auto back = zone_from_name(zone_name(z));
        REQUIRE(back.has_value());
        REQUIRE(*back == z);
    }
    REQUIRE(!zone_from_name("Crimson").has_value());
    REQUIRE(!zone_from_name("red").has_value());
}

TEST_CASE("decision rules fire in order") {
    // R1: some strictly positive eps with ibar >= 1
    auto red = classify(limits_of(kInf, kInf, kInf, kInf, kInf, kInf, kInf));
    REQUIRE(red.zone == Zone::Red);
    REQUIRE(red.basis.at(0).find("R1") != std::string::npos);

    // R2: certain crossing under a subcritical sqrt ceiling
    auto yellow = classify(limits_of(kInf, 0.0, kInf, 0.0, 0.0, 0.0, 0.0));
    REQUIRE(yellow.zone == Zone::Yellow);
    REQUIRE(yellow.basis.at(0).find("R2") != std::string::npos);

    // R3: barrier sinks below the lower envelope
    auto green = classify(limits_of(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0));
    REQUIRE(green.zone == Zone::Green);
    REQUIRE(green.basis.at(0).find("R3") != std::string::npos);

    // R4: limsup crosses the upper envelope while ibar(0) stays small
    auto tw_mean = classify(limits_of(0.0, 0.0, kInf, kInf, 0.0, 0.0, kInf));
    REQUIRE(tw_mean.zone == Zone::TwilightMeanUnknown);
    REQUIRE(tw_mean.basis.at(0).find("R4") != std::string::npos);

    // R5: liminf crossing with sbar0 too large for R2 (critical sqrt barrier)
    auto crit = classify(limits_of(kInf, 0.0, kInf, 0.0, 1.0, 0.0, 1.0));
    REQUIRE(crit.zone == Zone::TwilightMeanUnknown);
    REQUIRE(crit.basis.at(0).find("R5") != std::string::npos);

    // R6: mean known infinite, crossing certainty open
    auto tw_fin = classify(limits_of(0.0, 0.0, kInf, 0.0, 0.0, 0.0, 0.0));
    REQUIRE(tw_fin.zone == Zone::TwilightFinitenessUnknown);
    REQUIRE(tw_fin.basis.at(0).find("R6") != std::string::npos);

    // R7: nothing decides (large sbar0 blocks R6)
    auto dark = classify(limits_of(0.0, 0.0, kInf, 0.0, 0.0, 0.0, kInf));
    REQUIRE(dark.zone == Zone::Dark);
    REQUIRE(dark.basis.at(0).find("R7") != std::string::npos);
}

TEST_CASE("red takes precedence over weaker rules") {
    // i_minus >= 1 alone would land in R5, but a supercritical liminf wins first
    auto lim = limits_of(kInf, kInf, kInf, kInf, kInf, kInf, kInf);
    REQUIRE(classify(lim).zone == Zone::Red);
}

TEST_CASE("inconsistent limits are refused") {
    // i_plus above i_minus breaks the order
    auto lim = limits_of(0.5, 2.0, 1.0, 1.0, 0.7, 0.7, 1.0);
    REQUIRE_THROWS_AS(classify(lim), InconsistentLimits);

    // empty ibar grid
    AsymptoticLimits empty;
    empty.i_minus = empty.s_minus = kInf;
    REQUIRE_THROWS_AS(classify(empty), InconsistentLimits);

    // ibar increasing in eps
    auto bad = limits_of(kInf, 0.0, kInf, 0.0, 0.0, 0.0, 0.5);
    bad.ibar.back().second = 0.4;
    REQUIRE_THROWS_AS(classify(bad), InconsistentLimits);
}

TEST_CASE("zone assertion helpers") {
    auto mk = [](Zone z) { RiskZone r; r.zone = z; return r; };
    REQUIRE(mk(Zone::Red).asserts_crossing_certain());
    REQUIRE(mk(Zone::Red).asserts_finite_mean());
    REQUIRE(!mk(Zone::Red).asserts_infinite_mean());
    REQUIRE(mk(Zone::Yellow).asserts_crossing_certain());
    REQUIRE(mk(Zone::Yellow).asserts_infinite_mean());
    REQUIRE(!mk(Zone::Yellow).asserts_finite_mean());
    REQUIRE(mk(Zone::Green).asserts_positive_survival());
    REQUIRE(mk(Zone::Green).asserts_infinite_mean());
    REQUIRE(!mk(Zone::Green).asserts_crossing_certain());
    REQUIRE(mk(Zone::TwilightMeanUnknown).asserts_crossing_certain());
    REQUIRE(!mk(Zone::TwilightMeanUnknown).asserts_finite_mean());
    REQUIRE(mk(Zone::TwilightFinitenessUnknown).asserts_infinite_mean());
    REQUIRE(!mk(Zone::TwilightFinitenessUnknown).asserts_crossing_certain());
    REQUIRE(!mk(Zone::Dark).asserts_crossing_certain());
    REQUIRE(!mk(Zone::Dark).asserts_infinite_mean());
    REQUIRE(!mk(Zone::Dark).asserts_positive_survival());
}

TEST_CASE("definite limit classification") {
    REQUIRE(classify_definite(0.5).zone == Zone::Green);
    REQUIRE(classify_definite(0.0).zone == Zone::Green);
    REQUIRE(classify_definite(1.5, 0.5).zone == Zone::Yellow);
    REQUIRE(classify_definite(1.0, 0.0).zone == Zone::Yellow);
    REQUIRE(classify_definite(1.5).zone == Zone::TwilightMeanUnknown);
    REQUIRE(classify_definite(1.5, 1.2).zone == Zone::TwilightMeanUnknown);
    REQUIRE(classify_definite(kInf, kInf).zone == Zone::TwilightMeanUnknown);
    REQUIRE(!classify_definite(0.5).heuristic);
    REQUIRE_THROWS_AS(classify_definite(-0.1), InvalidParams);
    REQUIRE_THROWS_AS(classify_definite(std::nan("")), InvalidParams);
}

TEST_CASE("definite and full classification agree on what they assert") {
    // supercritical sqrt barrier: both routes assert certain crossing
    auto full = classify(limits_from_profile(AsymptoticProfile::sqrt_t(2.0), unit_params()));
    auto definite = classify_definite(kInf, kInf);
    REQUIRE(full.asserts_crossing_certain());
    REQUIRE(definite.asserts_crossing_certain());

    // subcritical: both leave survival possible
    auto full2 = classify(limits_from_profile(AsymptoticProfile::linear(-1.0), unit_params()));
    auto definite2 = classify_definite(0.0);
    REQUIRE(full2.zone == Zone::Green);
    REQUIRE(definite2.zone == Zone::Green);
}

TEST_CASE("classify_spec prefers the declared profile and probes otherwise") {
    GbmParams p = unit_params();
    auto declared = BarrierSpec::make(p, parse_tilde("2*sqrt(t)"), AsymptoticProfile::sqrt_t(2.0));
    auto r1 = classify_spec(declared);
    REQUIRE(r1.zone == Zone::Red);
    REQUIRE(!r1.heuristic);

    auto bare = BarrierSpec::make(p, parse_tilde("2*sqrt(t)"));
    auto r2 = classify_spec(bare);
    REQUIRE(r2.zone == Zone::Red);
    REQUIRE(r2.heuristic);
}

TEST_CASE("shipped corpus classifies to its recorded zones") {
    std::ifstream in(FPTZONE_CORPUS_PATH);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    auto doc = nlohmann::json::parse(buf.str());
    REQUIRE(doc.contains("entries"));
    const auto& entries = doc.at("entries");
    REQUIRE(entries.is_array());
    REQUIRE(entries.size() >= 11);

    for (const auto& entry : entries) {
        BarrierSpec spec = parse_barrier_spec(entry.at("spec").dump());
        auto expected = zone_from_name(entry.at("expected_zone").get<std::string>());
        REQUIRE(expected.has_value());
        auto zone = classify_spec(spec);
        INFO(entry.at("name").get<std::string>() << ": " << zone.basis.at(0));
        REQUIRE(zone.zone == *expected);
        REQUIRE(!zone.heuristic);  // every corpus entry declares its profile
        REQUIRE(!zone.basis.empty());
    }
}
