#include "fptzone/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fptzone/errors.hpp"

namespace fptzone {

namespace {

using nlohmann::json;

// extended reals: +inf serializes as the string "inf"
json ext(double v) {
    if (std::isinf(v) && v > 0.0) return json("inf");
    return json(v);
}

double parse_ext(const json& j, const char* what) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw InputError(std::string(what) + ": expected a number or \"inf\"");
    }
    if (!j.is_number()) throw InputError(std::string(what) + ": expected a number or \"inf\"");
    return j.get<double>();
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw InputError(std::string("barrier document needs a numeric \"") + key + "\"");
    }
    return j.at(key).get<double>();
}

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw InputError(std::string("expected a string \"") + key + "\"");
    }
    return j.at(key).get<std::string>();
}

const char* growth_kind_name(GrowthKind k) {
    switch (k) {
        case GrowthKind::Constant: return "constant";
        case GrowthKind::Power: return "power";
        case GrowthKind::SqrtT: return "sqrt_t";
        case GrowthKind::SqrtTLogLog: return "sqrt_t_loglog";
        case GrowthKind::Linear: return "linear";
        case GrowthKind::Superlinear: return "superlinear";
    }
    return "unknown";
}

GrowthKind growth_kind_from_name(const std::string& name) {
    if (name == "constant") return GrowthKind::Constant;
    if (name == "power") return GrowthKind::Power;
    if (name == "sqrt_t") return GrowthKind::SqrtT;
    if (name == "sqrt_t_loglog") return GrowthKind::SqrtTLogLog;
    if (name == "linear") return GrowthKind::Linear;
    if (name == "superlinear") return GrowthKind::Superlinear;
    throw InputError("unknown growth kind \"" + name + "\"");
}

json term_to_json(const GrowthTerm& g) {
    json j;
    j["kind"] = growth_kind_name(g.kind);
    if (g.kind == GrowthKind::Power) j["p"] = g.p;
    if (g.kind != GrowthKind::Superlinear) j["c"] = g.c;
    return j;
}

GrowthTerm term_from_json(const json& j) {
    GrowthTerm g;
    g.kind = growth_kind_from_name(require_string(j, "kind"));
    if (g.kind == GrowthKind::Power) g.p = require_number(j, "p");
    if (g.kind != GrowthKind::Superlinear) g.c = require_number(j, "c");
    return g;
}

json limits_to_json(const AsymptoticLimits& l) {
    json j;
    j["i_minus"] = ext(l.i_minus);
    j["i_plus"] = ext(l.i_plus);
    j["s_minus"] = ext(l.s_minus);
    j["s_plus"] = ext(l.s_plus);
    j["sbar0"] = ext(l.sbar0);
    json grid = json::array();
    for (const auto& [eps, v] : l.ibar) grid.push_back(json::array({eps, ext(v)}));
    j["ibar"] = grid;
    j["provenance"] =
        l.provenance == AsymptoticLimits::Provenance::Declared ? "declared" : "probed";
    if (!l.grid_summary.empty()) j["grid"] = l.grid_summary;
    return j;
}

AsymptoticLimits limits_from_json(const json& j) {
    AsymptoticLimits l;
    l.i_minus = parse_ext(j.at("i_minus"), "i_minus");
    l.i_plus = parse_ext(j.at("i_plus"), "i_plus");
    l.s_minus = parse_ext(j.at("s_minus"), "s_minus");
    l.s_plus = parse_ext(j.at("s_plus"), "s_plus");
    l.sbar0 = parse_ext(j.at("sbar0"), "sbar0");
    if (!j.contains("ibar") || !j.at("ibar").is_array()) {
        throw InputError("custom limits need an \"ibar\" array of [eps, value] pairs");
    }
    for (const auto& pair : j.at("ibar")) {
        if (!pair.is_array() || pair.size() != 2) {
            throw InputError("each ibar entry must be an [eps, value] pair");
        }
        l.ibar.emplace_back(parse_ext(pair[0], "ibar eps"), parse_ext(pair[1], "ibar value"));
    }
    l.provenance = AsymptoticLimits::Provenance::Declared;
    return l;
}

json profile_to_json(const AsymptoticProfile& p) {
    json j;
    switch (p.kind) {
        case AsymptoticProfile::Kind::Simple:
            j["kind"] = "simple";
            j["term"] = term_to_json(p.term);
            break;
        case AsymptoticProfile::Kind::Oscillating:
            j["kind"] = "oscillating";
            j["lower"] = term_to_json(p.lower);
            j["upper"] = term_to_json(p.upper);
            break;
        case AsymptoticProfile::Kind::CustomLimits:
            j["kind"] = "custom_limits";
            j["limits"] = limits_to_json(*p.custom);
            break;
    }
    return j;
}

AsymptoticProfile profile_from_json(const json& j) {
    const std::string kind = require_string(j, "kind");
    if (kind == "simple") {
        if (!j.contains("term")) throw InputError("simple profile needs a \"term\"");
        AsymptoticProfile p;
        p.kind = AsymptoticProfile::Kind::Simple;
        p.term = term_from_json(j.at("term"));
        return p;
    }
    if (kind == "oscillating") {
        if (!j.contains("lower") || !j.contains("upper")) {
            throw InputError("oscillating profile needs \"lower\" and \"upper\" terms");
        }
        return AsymptoticProfile::oscillating(term_from_json(j.at("lower")),
                                              term_from_json(j.at("upper")));
    }
    if (kind == "custom_limits") {
        if (!j.contains("limits")) throw InputError("custom_limits profile needs \"limits\"");
        return AsymptoticProfile::custom_limits(limits_from_json(j.at("limits")));
    }
    throw InputError("unknown profile kind \"" + kind + "\"");
}

json spec_to_json(const BarrierSpec& spec) {
    const GbmParams& p = spec.params();
    json j;
    j["mu"] = p.mu;
    j["sigma"] = p.sigma;
    j["v0"] = p.v0;
    j["k"] = p.k;
    j["tilde"] = spec.tilde().pretty();
    if (spec.ln_inflation()) j["ln_a"] = spec.ln_inflation()->pretty();
    if (spec.profile()) j["profile"] = profile_to_json(*spec.profile());
    return j;
}

json config_to_json(const SimConfig& c) {
    json j;
    j["n_paths"] = c.n_paths;
    j["dt"] = c.dt;
    j["horizon"] = c.horizon;
    j["seed"] = c.seed;
    j["bridge_correction"] = c.bridge_correction;
    j["antithetic"] = c.antithetic;
    return j;
}

json estimate_to_json(const FptEstimate& e) {
    json j;
    j["n_paths"] = e.n_paths;
    j["n_censored"] = e.n_censored;
    j["horizon"] = e.horizon;
    j["survival"] = e.survival;
    j["survival_se"] = e.survival_se;
    j["survival_wilson95"] = json::array({e.survival_lo95, e.survival_hi95});
    j["truncated_mean"] = e.truncated_mean;
    j["truncated_mean_se"] = e.truncated_mean_se;
    if (e.tail) {
        json t;
        t["slope"] = e.tail->slope;
        t["residual"] = e.tail->residual;
        t["n_points"] = e.tail->n_points;
        j["tail"] = t;
    } else {
        j["tail"] = nullptr;
    }
    return j;
}

}  // namespace

BarrierSpec parse_barrier_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) throw InputError("barrier document must be a JSON object");
        GbmParams p;
        p.mu = require_number(j, "mu");
        p.sigma = require_number(j, "sigma");
        p.v0 = require_number(j, "v0");
        p.k = require_number(j, "k");

        // optional fields: an explicit null is the same as leaving the key out
        auto present = [&](const char* key) { return j.contains(key) && !j.at(key).is_null(); };

        TildeExpr tilde;
        if (present("tilde")) tilde = parse_tilde(require_string(j, "tilde"));

        std::optional<AsymptoticProfile> profile;
        if (present("profile")) profile = profile_from_json(j.at("profile"));

        std::optional<TildeExpr> ln_a;
        if (present("ln_a")) ln_a = parse_tilde(require_string(j, "ln_a"));

        return BarrierSpec::make(p, std::move(tilde), std::move(profile), std::move(ln_a));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed barrier document: ") + e.what());
    }
}

std::string render_barrier_spec(const BarrierSpec& spec) {
    return spec_to_json(spec).dump(2);
}

std::string render_zone_report(const BarrierSpec& spec, const RiskZone& zone,
                               const AsymptoticLimits& limits) {
    json j;
    j["zone"] = zone_name(zone.zone);
    j["basis"] = zone.basis;
    j["heuristic"] = zone.heuristic;
    j["limits"] = limits_to_json(limits);
    j["spec"] = spec_to_json(spec);
    return j.dump(2);
}

std::string render_bound_reports(const BarrierSpec& spec, const std::vector<BoundReport>& bounds,
                                 const std::vector<std::string>& notes,
                                 std::optional<double> crossing_prob) {
    json arr = json::array();
    for (const auto& b : bounds) {
        json j;
        j["kind"] = bound_kind_name(b.kind);
        j["value"] = ext(b.value);
        j["t_switch"] = b.t_switch ? json(*b.t_switch) : json(nullptr);
        j["quadrature_error"] = b.quadrature_error;
        j["assumptions"] = b.assumptions;
        arr.push_back(j);
    }
    json j;
    j["bounds"] = arr;
    j["notes"] = notes;
    if (crossing_prob) j["crossing_prob"] = *crossing_prob;
    j["spec"] = spec_to_json(spec);
    return j.dump(2);
}

std::string render_simulation_report(const BarrierSpec& spec, const FptSampleSet& samples,
                                     const FptEstimate& est) {
    json j;
    j["config"] = config_to_json(samples.config);
    j["estimate"] = estimate_to_json(est);
    j["wall_time_seconds"] = samples.wall_time_seconds;
    j["spec"] = spec_to_json(spec);
    return j.dump(2);
}

std::string render_samples_csv(const FptSampleSet& samples) {
    std::ostringstream os;
    os << "path_id,crossed,time\n";
    os.precision(17);
    for (std::size_t i = 0; i < samples.outcomes.size(); ++i) {
        const PathOutcome& o = samples.outcomes[i];
        os << i << ',' << (o.crossed ? 1 : 0) << ',' << o.time << '\n';
    }
    return os.str();
}

std::string render_consistency_report(const BarrierSpec& spec, const ConsistencyReport& rep) {
    json j;
    j["zone"] = zone_name(rep.zone);
    j["horizons"] = rep.horizons;
    json ests = json::array();
    for (const auto& e : rep.estimates) ests.push_back(estimate_to_json(e));
    j["estimates"] = ests;
    json crit = json::array();
    for (const auto& c : rep.criteria) {
        json cj;
        cj["name"] = c.name;
        cj["status"] = check_status_name(c.status);
        cj["detail"] = c.detail;
        crit.push_back(cj);
    }
    j["criteria"] = crit;
    j["all_pass"] = rep.all_pass();
    j["spec"] = spec_to_json(spec);
    return j.dump(2);
}

std::string render_error(const std::string& code, const std::string& detail) {
    json j;
    j["error"] = code;
    j["detail"] = detail;
    return j.dump();
}

}  // namespace fptzone
