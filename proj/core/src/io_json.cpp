#include <json.hpp>

#include "ifaudit/io.hpp"

// nlohmann::json stays private to this translation unit; the public API
// speaks strings. Plain `json` sorts object keys, which is what makes every
// emitted report byte-stable.
using json = nlohmann::json;

namespace ifaudit {

namespace {

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw JsonError("malformed JSON");
    return j;
}

const json& member(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw JsonError(std::string("missing field \"") + key + "\"");
    return *it;
}

double number_field(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_number()) throw JsonError(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

std::string string_field(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_string()) throw JsonError(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

MetricDomain parse_domain(const std::string& s) {
    if (s == "feature-space") return MetricDomain::FeatureSpace;
    if (s == "score-space") return MetricDomain::ScoreSpace;
    if (s == "uid-space") return MetricDomain::UidSpace;
    throw JsonError("unknown metric domain \"" + s + "\"");
}

PseudoMetricSpec metric_from_json(const json& j, MetricDomain default_domain) {
    if (!j.is_object()) throw JsonError("metric spec must be an object");
    const std::string kind = string_field(j, "kind");
    const MetricDomain domain =
        j.contains("domain") ? parse_domain(string_field(j, "domain")) : default_domain;
    if (kind == "trivial") return PseudoMetricSpec::trivial(domain);
    if (kind == "discrete") return PseudoMetricSpec::discrete(domain);
    if (kind == "euclidean") return PseudoMetricSpec::euclidean(domain);
    if (kind == "capped_euclidean") {
        return PseudoMetricSpec::capped_euclidean(number_field(j, "cap"), domain);
    }
    if (kind == "weighted_lp") {
        const json& w = member(j, "weights");
        if (!w.is_array()) throw JsonError("weighted_lp \"weights\" must be an array");
        std::vector<double> weights;
        for (const json& x : w) {
            if (!x.is_number()) throw JsonError("weighted_lp weights must be numbers");
            weights.push_back(x.get<double>());
        }
        return PseudoMetricSpec::weighted_lp(number_field(j, "p"), std::move(weights), domain);
    }
    throw JsonError("unknown metric kind \"" + kind + "\"");
}

json metric_to_json_obj(const PseudoMetricSpec& spec) {
    json j;
    j["kind"] = to_string(spec.kind());
    j["domain"] = to_string(spec.domain());
    if (spec.kind() == MetricKind::WeightedLp) {
        j["p"] = spec.exponent();
        j["weights"] = spec.weights();
    } else if (spec.kind() == MetricKind::CappedEuclidean) {
        j["cap"] = spec.cap();
    }
    return j;
}

ScoreTransform transform_from_json(const json& j) {
    if (!j.is_object()) throw JsonError("transform spec must be an object");
    const std::string kind = string_field(j, "kind");
    if (kind == "translate") return Translation(number_field(j, "c"));
    if (kind == "reflect") return Reflection(number_field(j, "center"));
    if (kind == "contract") {
        return Contraction(number_field(j, "k"), number_field(j, "center"));
    }
    if (kind == "collapse") return ConstantCollapse(number_field(j, "y_star"));
    if (kind == "local_contract") {
        return LocalContraction(number_field(j, "t"), number_field(j, "t_prime"),
                                number_field(j, "t_star"));
    }
    if (kind == "fold") return Folding(number_field(j, "a"), number_field(j, "b"));
    if (kind == "compose") {
        const json& steps = member(j, "steps");
        if (!steps.is_array()) throw JsonError("compose \"steps\" must be an array");
        std::vector<ScoreTransform> parsed;
        for (const json& s : steps) parsed.push_back(transform_from_json(s));
        return Composition(std::move(parsed));
    }
    throw JsonError("unknown transform kind \"" + kind + "\"");
}

json transform_to_json_obj(const ScoreTransform& phi) {
    return std::visit(
        [](const auto& t) -> json {
            using T = std::decay_t<decltype(t)>;
            json j;
            if constexpr (std::is_same_v<T, Translation>) {
                j["kind"] = "translate";
                j["c"] = t.offset;
            } else if constexpr (std::is_same_v<T, Reflection>) {
                j["kind"] = "reflect";
                j["center"] = t.center;
            } else if constexpr (std::is_same_v<T, Contraction>) {
                j["kind"] = "contract";
                j["k"] = t.factor;
                j["center"] = t.center;
            } else if constexpr (std::is_same_v<T, ConstantCollapse>) {
                j["kind"] = "collapse";
                j["y_star"] = t.value;
            } else if constexpr (std::is_same_v<T, LocalContraction>) {
                j["kind"] = "local_contract";
                j["t"] = t.lo;
                j["t_prime"] = t.hi;
                j["t_star"] = t.target;
            } else if constexpr (std::is_same_v<T, Folding>) {
                j["kind"] = "fold";
                j["a"] = t.a;
                j["b"] = t.b;
            } else {
                j["kind"] = "compose";
                j["steps"] = json::array();
                for (const ScoreTransform& s : t.steps) {
                    j["steps"].push_back(transform_to_json_obj(s));
                }
            }
            return j;
        },
        phi.value());
}

Threshold threshold_from_json(const json& j) {
    if (!j.is_object()) throw JsonError("threshold must be an object");
    Direction dir = Direction::AtOrAbove;
    if (j.contains("direction")) {
        const std::string d = string_field(j, "direction");
        if (d == "at_or_above") {
            dir = Direction::AtOrAbove;
        } else if (d == "below") {
            dir = Direction::Below;
        } else {
            throw JsonError("unknown threshold direction \"" + d + "\"");
        }
    }
    return Threshold(number_field(j, "t"), dir);
}

json threshold_to_json_obj(const Threshold& th) {
    json j;
    j["t"] = th.t;
    j["direction"] = th.positive_direction == Direction::AtOrAbove ? "at_or_above" : "below";
    return j;
}

ScoreDistribution score_dist_from_json(const json& j) {
    if (!j.is_object()) throw JsonError("score distribution must be an object");
    const std::string kind = string_field(j, "kind");
    if (kind == "uniform") {
        return ScoreDistribution(UniformDist{number_field(j, "lo"), number_field(j, "hi")});
    }
    if (kind == "normal") {
        return ScoreDistribution(NormalDist{number_field(j, "mean"), number_field(j, "sd")});
    }
    if (kind == "point_mass") return ScoreDistribution(PointMass{number_field(j, "value")});
    if (kind == "mixture") {
        const json& comps = member(j, "components");
        if (!comps.is_array()) throw JsonError("mixture \"components\" must be an array");
        MixtureDist mix;
        for (const json& c : comps) {
            mix.components.push_back(
                MixtureComponent{number_field(c, "weight"), score_dist_from_json(member(c, "dist"))});
        }
        return ScoreDistribution(std::move(mix));
    }
    throw JsonError("unknown score distribution kind \"" + kind + "\"");
}

json score_dist_to_json_obj(const ScoreDistribution& dist) {
    return std::visit(
        [](const auto& d) -> json {
            using T = std::decay_t<decltype(d)>;
            json j;
            if constexpr (std::is_same_v<T, UniformDist>) {
                j["kind"] = "uniform";
                j["lo"] = d.lo;
                j["hi"] = d.hi;
            } else if constexpr (std::is_same_v<T, NormalDist>) {
                j["kind"] = "normal";
                j["mean"] = d.mean;
                j["sd"] = d.sd;
            } else if constexpr (std::is_same_v<T, PointMass>) {
                j["kind"] = "point_mass";
                j["value"] = d.value;
            } else {
                j["kind"] = "mixture";
                j["components"] = json::array();
                for (const MixtureComponent& c : d.components) {
                    json cj;
                    cj["weight"] = c.weight;
                    cj["dist"] = score_dist_to_json_obj(c.dist);
                    j["components"].push_back(std::move(cj));
                }
            }
            return j;
        },
        dist.value());
}

json group_record_to_json_obj(const GroupRecord& rec) {
    json j;
    j["count"] = rec.count;
    j["positives"] = rec.positives;
    j["selection_rate"] = rec.selection_rate;
    return j;
}

json concentration_to_json_obj(const ConcentrationRecord& rec) {
    json j;
    j["lo"] = rec.lo;
    j["hi"] = rec.hi;
    j["group"] = rec.group;
    j["interval_total"] = rec.interval_total;
    j["fraction_of_interval"] =
        rec.fraction_of_interval ? json(*rec.fraction_of_interval) : json(nullptr);
    j["base_rate"] = rec.base_rate;
    j["overrepresentation_ratio"] =
        rec.overrepresentation_ratio ? json(*rec.overrepresentation_ratio) : json(nullptr);
    return j;
}

json group_stats_to_json_obj(const GroupStats& stats) {
    json per_group = json::object();
    for (const auto& [group, rec] : stats.per_group) {
        per_group[group] = group_record_to_json_obj(rec);
    }
    json j;
    j["per_group"] = std::move(per_group);
    j["spd"] = stats.spd;
    if (stats.interval_concentration) {
        j["interval_concentration"] = concentration_to_json_obj(*stats.interval_concentration);
    }
    return j;
}

}  // namespace

PseudoMetricSpec parse_metric_spec(const std::string& json_text, MetricDomain default_domain) {
    return metric_from_json(parse_json(json_text), default_domain);
}

std::string metric_spec_to_json(const PseudoMetricSpec& spec) {
    return metric_to_json_obj(spec).dump();
}

AuditConfig parse_audit_config(const std::string& json_text) {
    const json j = parse_json(json_text);
    if (!j.is_object()) throw JsonError("audit config must be an object");
    PseudoMetricSpec d = metric_from_json(member(j, "d"), MetricDomain::FeatureSpace);
    PseudoMetricSpec D = metric_from_json(member(j, "D"), MetricDomain::ScoreSpace);
    const double slack = j.contains("slack") ? number_field(j, "slack") : 1e-12;
    return AuditConfig(std::move(d), std::move(D), slack);
}

std::string audit_config_to_json(const AuditConfig& cfg) {
    json j;
    j["d"] = metric_to_json_obj(cfg.d);
    j["D"] = metric_to_json_obj(cfg.D);
    j["slack"] = cfg.slack;
    return j.dump();
}

ScoreTransform parse_transform(const std::string& json_text) {
    return transform_from_json(parse_json(json_text));
}

std::string transform_to_json(const ScoreTransform& phi) {
    return transform_to_json_obj(phi).dump();
}

UtilitySpec parse_utility_spec(const std::string& json_text) {
    const json j = parse_json(json_text);
    if (!j.is_object()) throw JsonError("utility spec must be an object");
    const Threshold th = threshold_from_json(member(j, "threshold"));
    const json& w = member(j, "weights");
    if (!w.is_object()) throw JsonError("utility \"weights\" must be an object");
    std::map<std::string, double> weights;
    for (const auto& [group, v] : w.items()) {
        if (!v.is_number()) throw JsonError("weight for group \"" + group + "\" must be a number");
        weights[group] = v.get<double>();
    }
    return UtilitySpec(th, std::move(weights));
}

std::string utility_spec_to_json(const UtilitySpec& u) {
    json j;
    j["threshold"] = threshold_to_json_obj(u.threshold);
    j["weights"] = json::object();
    for (const auto& [group, w] : u.weight_per_group) j["weights"][group] = w;
    return j.dump();
}

DistributionTable parse_distribution_table(const std::string& json_text) {
    const json j = parse_json(json_text);
    if (!j.is_object()) throw JsonError("distribution table must be an object");
    const json& outcomes_j = member(j, "outcomes");
    if (!outcomes_j.is_array()) throw JsonError("\"outcomes\" must be an array");
    std::vector<std::string> outcomes;
    for (const json& o : outcomes_j) {
        if (!o.is_string()) throw JsonError("outcome labels must be strings");
        outcomes.push_back(o.get<std::string>());
    }
    const json& rows_j = member(j, "rows");
    if (!rows_j.is_object()) throw JsonError("\"rows\" must be an object");
    std::map<std::string, std::vector<Rational>> rows;
    for (const auto& [id, row_j] : rows_j.items()) {
        if (!row_j.is_array()) throw JsonError("row \"" + id + "\" must be an array");
        std::vector<Rational> row;
        for (const json& entry : row_j) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
                !entry[1].is_string()) {
                throw JsonError("row \"" + id +
                                "\" entries must be [numerator, denominator] string pairs");
            }
            row.push_back(
                make_rational(entry[0].get<std::string>(), entry[1].get<std::string>()));
        }
        rows.emplace(id, std::move(row));
    }
    return DistributionTable(std::move(outcomes), std::move(rows));
}

std::string distribution_table_to_json(const DistributionTable& table) {
    json rows = json::object();
    for (const auto& [id, row] : table.rows()) {
        json row_j = json::array();
        for (const Rational& r : row) {
            const auto [num, den] = rational_parts(r);
            row_j.push_back(json::array({num, den}));
        }
        rows[id] = std::move(row_j);
    }
    json j;
    j["outcomes"] = table.outcomes();
    j["rows"] = std::move(rows);
    return j.dump();
}

ScenarioConfig parse_scenario_config(const std::string& json_text) {
    const json j = parse_json(json_text);
    if (!j.is_object()) throw JsonError("scenario config must be an object");
    ScenarioConfig cfg;
    cfg.rng = j.contains("rng") ? string_field(j, "rng") : std::string(kRngTag);
    if (j.contains("seed")) {
        const json& s = member(j, "seed");
        if (!s.is_number_integer() && !s.is_number_unsigned()) {
            throw JsonError("\"seed\" must be an integer");
        }
        cfg.seed = s.get<std::uint64_t>();
    }
    if (j.contains("feature_dim")) {
        cfg.feature_dim = member(j, "feature_dim").get<std::size_t>();
    }
    if (j.contains("assign_uids")) {
        const json& b = member(j, "assign_uids");
        if (!b.is_boolean()) throw JsonError("\"assign_uids\" must be a boolean");
        cfg.assign_uids = b.get<bool>();
    }
    if (j.contains("preset")) cfg.preset_name = string_field(j, "preset");
    if (j.contains("preset_version")) cfg.preset_version = member(j, "preset_version").get<int>();
    const json& groups_j = member(j, "groups");
    if (!groups_j.is_array()) throw JsonError("\"groups\" must be an array");
    for (const json& g : groups_j) {
        GroupSpec spec{string_field(g, "label"), member(g, "count").get<std::size_t>(),
                       score_dist_from_json(member(g, "dist")), std::nullopt};
        if (g.contains("stream")) spec.stream = member(g, "stream").get<std::uint64_t>();
        cfg.groups.push_back(std::move(spec));
    }
    return cfg;
}

std::string scenario_config_to_json(const ScenarioConfig& cfg) {
    json groups = json::array();
    for (const GroupSpec& g : cfg.groups) {
        json gj;
        gj["label"] = g.label;
        gj["count"] = g.count;
        gj["dist"] = score_dist_to_json_obj(g.dist);
        if (g.stream) gj["stream"] = *g.stream;
        groups.push_back(std::move(gj));
    }
    json j;
    j["rng"] = cfg.rng;
    j["seed"] = cfg.seed;
    j["feature_dim"] = cfg.feature_dim;
    j["assign_uids"] = cfg.assign_uids;
    j["groups"] = std::move(groups);
    if (cfg.preset_name) j["preset"] = *cfg.preset_name;
    if (cfg.preset_version) j["preset_version"] = *cfg.preset_version;
    return j.dump();
}

std::string audit_report_to_json(const AuditReport& report) {
    json violations = json::array();
    for (const AuditViolation& v : report.violations) {
        json vj;
        vj["p"] = v.p;
        vj["q"] = v.q;
        vj["d"] = v.d_value;
        vj["D"] = v.D_value;
        violations.push_back(std::move(vj));
    }
    json j;
    j["passed"] = report.passed;
    j["n_pairs"] = report.n_pairs;
    j["violations"] = std::move(violations);
    j["max_slack_used"] = report.max_slack_used;
    j["slack"] = report.slack;
    return j.dump();
}

std::string group_stats_to_json(const GroupStats& stats) {
    return group_stats_to_json_obj(stats).dump();
}

std::string concentration_to_json(const ConcentrationRecord& rec) {
    return concentration_to_json_obj(rec).dump();
}

std::string nonexpansiveness_report_to_json(const NonExpansivenessReport& report) {
    auto pair_obj = [](const NonExpansivenessReport::Pair& p) {
        json j;
        j["p"] = p.p;
        j["q"] = p.q;
        j["d_phi"] = p.d_phi;
        j["d"] = p.d;
        return j;
    };
    json j;
    j["passed"] = report.passed;
    j["checked_pairs"] = report.checked_pairs;
    j["max_ratio"] = report.max_ratio;
    j["max_ratio_pair"] = pair_obj(report.max_ratio_pair);
    j["violations"] = json::array();
    for (const auto& v : report.violations) j["violations"].push_back(pair_obj(v));
    return j.dump();
}

std::string attack_result_to_json(const AttackResult& result) {
    json j;
    j["best_transform"] = transform_to_json_obj(result.best_transform);
    j["best_utility"] = result.best_utility;
    j["baseline_utility"] = result.baseline_utility;
    j["candidates_evaluated"] = result.candidates_evaluated;
    j["audit_passed"] = result.audit_passed;
    j["stats_before"] = group_stats_to_json_obj(result.stats_before);
    j["stats_after"] = group_stats_to_json_obj(result.stats_after);
    return j.dump();
}

std::string metric_validation_report_to_json(const MetricValidationReport& report) {
    json violations = json::array();
    for (const MetricAxiomViolation& v : report.violations) {
        json vj;
        vj["axiom"] = v.axiom;
        vj["points"] = v.points;
        vj["values"] = v.values;
        violations.push_back(std::move(vj));
    }
    json j;
    j["passed"] = report.passed;
    j["n_points"] = report.n_points;
    j["violations"] = std::move(violations);
    return j.dump();
}

std::string leibniz_report_to_json(const LeibnizReport& report) {
    json mismatches = json::array();
    for (const LeibnizMismatch& m : report.mismatches) {
        json mj;
        mj["id"] = m.id;
        mj["outcome"] = m.outcome;
        mismatches.push_back(std::move(mj));
    }
    json j;
    j["passed"] = report.passed;
    j["checked"] = report.checked;
    j["mismatches"] = std::move(mismatches);
    return j.dump();
}

std::string partition_to_json(const Partition& partition) {
    json j;
    j["blocks"] = partition.blocks();
    j["n_blocks"] = partition.n_blocks();
    return j.dump();
}

}  // namespace ifaudit
