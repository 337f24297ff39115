// Command-line front end. Exit contract: 0 = success (and, for audit-style
// commands, the property holds), 1 = property violated, 2 = usage or input
// error. Reports are machine-readable JSON with sorted keys and no
// timestamps unless --timestamp is passed, so identical inputs give
// byte-identical outputs.

#include <ctime>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifaudit/aif.hpp"
#include "ifaudit/audit.hpp"
#include "ifaudit/io.hpp"
#include "ifaudit/rng.hpp"
#include "ifaudit/search.hpp"
#include "ifaudit/synth.hpp"
#include "ifaudit/transforms.hpp"

namespace {

using namespace ifaudit;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Common {
    std::string out;
    bool pretty = false;
    bool timestamp = false;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "Write the report to this file instead of stdout");
    cmd->add_flag("--pretty", c.pretty, "Emit a human-readable summary instead of JSON");
    cmd->add_flag("--timestamp", c.timestamp, "Stamp the JSON report with the current UTC time");
    cmd->add_option("--seed", c.seed, "Seed for any randomized step");
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(const Common& c, std::string payload, bool is_json = true) {
    if (is_json && c.timestamp) {
        nlohmann::json j = nlohmann::json::parse(payload);
        j["timestamp"] = utc_now();
        payload = j.dump();
    }
    if (payload.empty() || payload.back() != '\n') payload += '\n';
    if (c.out.empty()) {
        std::cout << payload;
    } else {
        write_text_file(c.out, payload);
    }
}

ScoredPopulation load_scored(const std::string& pop_path, const std::string& scores_path) {
    return apply_predictor(read_population_csv_file(pop_path),
                           read_scores_csv_file(scores_path));
}

Direction parse_direction(const std::string& s) {
    if (s == "at_or_above") return Direction::AtOrAbove;
    if (s == "below") return Direction::Below;
    throw InvalidSpec("direction must be at_or_above or below, got '" + s + "'");
}

std::string pretty_group_stats(const GroupStats& stats, const std::string& label) {
    std::ostringstream out;
    out << label << ":\n";
    for (const auto& [group, rec] : stats.per_group) {
        out << "  " << group << ": " << rec.positives << "/" << rec.count
            << " positive (rate " << format_double(rec.selection_rate) << ")\n";
    }
    out << "  spd " << format_double(stats.spd) << "\n";
    return out.str();
}

// ---- audit ----------------------------------------------------------------

int run_audit(const Common& c, const std::string& pop_path, const std::string& scores_path,
              const std::string& metrics_path, double slack, bool slack_given) {
    AuditConfig cfg = parse_audit_config(read_text_file(metrics_path));
    if (slack_given) cfg = AuditConfig(cfg.d, cfg.D, slack);
    const AuditReport report = audit_if(load_scored(pop_path, scores_path), cfg);
    if (c.pretty) {
        std::ostringstream out;
        out << "IF audit " << (report.passed ? "PASSED" : "FAILED") << " on " << report.n_pairs
            << " pairs (slack " << format_double(report.slack) << ")\n";
        for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) {
            const AuditViolation& v = report.violations[i];
            out << "  " << v.p << " vs " << v.q << ": D " << format_double(v.D_value) << " > d "
                << format_double(v.d_value) << "\n";
        }
        if (report.violations.size() > 5) {
            out << "  ... " << report.violations.size() - 5 << " more\n";
        }
        emit(c, out.str(), false);
    } else {
        emit(c, audit_report_to_json(report));
    }
    return report.passed ? kOk : kViolation;
}

// ---- attack ---------------------------------------------------------------

int run_attack(const Common& c, const std::string& pop_path, const std::string& scores_path,
               const std::string& transform_path, const std::string& scores_out, double t,
               bool t_given, const std::string& direction) {
    const ScoreTransform phi = parse_transform(read_text_file(transform_path));
    const ScoredPopulation before = load_scored(pop_path, scores_path);
    const ScoredPopulation after = apply_to_scored(phi, before);
    const std::string csv = scores_to_csv(after.scores());

    if (!t_given) {
        if (scores_out.empty()) {
            emit(c, csv, false);
        } else {
            write_text_file(scores_out, csv);
        }
        return kOk;
    }

    const Threshold th(t, parse_direction(direction));
    const GroupStats stats_before = selection_rates(before, th);
    const GroupStats stats_after = selection_rates(after, th);
    if (!scores_out.empty()) write_text_file(scores_out, csv);
    if (c.pretty) {
        emit(c,
             pretty_group_stats(stats_before, "before") + pretty_group_stats(stats_after, "after"),
             false);
    } else {
        nlohmann::json j;
        j["before"] = nlohmann::json::parse(group_stats_to_json(stats_before));
        j["after"] = nlohmann::json::parse(group_stats_to_json(stats_after));
        emit(c, j.dump());
    }
    return kOk;
}

// ---- search ---------------------------------------------------------------

int run_search(const Common& c, const std::string& pop_path, const std::string& scores_path,
               const std::string& utility_path, const std::string& families_csv,
               std::size_t resolution, const std::string& metrics_path) {
    const UtilitySpec u = parse_utility_spec(read_text_file(utility_path));
    std::vector<TransformFamily> families;
    std::string token;
    std::istringstream in(families_csv);
    while (std::getline(in, token, ',')) {
        if (!token.empty()) families.push_back(parse_family(token));
    }
    std::optional<AuditConfig> cfg;
    if (!metrics_path.empty()) cfg = parse_audit_config(read_text_file(metrics_path));

    const AttackResult result =
        search_attack(load_scored(pop_path, scores_path), u, families, resolution, cfg, c.seed);
    if (c.pretty) {
        std::ostringstream out;
        out << "best transform: " << transform_to_json(result.best_transform) << "\n"
            << "utility " << format_double(result.baseline_utility) << " -> "
            << format_double(result.best_utility) << " over " << result.candidates_evaluated
            << " candidates\n"
            << "IF audit of winner: " << (result.audit_passed ? "passed" : "FAILED") << "\n"
            << pretty_group_stats(result.stats_before, "before")
            << pretty_group_stats(result.stats_after, "after");
        emit(c, out.str(), false);
    } else {
        emit(c, attack_result_to_json(result));
    }
    return kOk;  // a successful attack is a successful search
}

// ---- aif ------------------------------------------------------------------

int run_aif(const Common& c, const std::string& fy_path, const std::string& fyhat_path,
            const std::string& method) {
    const DistributionTable f_y = parse_distribution_table(read_text_file(fy_path));
    const DistributionTable f_yhat = parse_distribution_table(read_text_file(fyhat_path));

    bool holds = false;
    std::optional<AifWitness> witness;
    if (method == "direct" || method == "both") {
        const AifCheckResult direct = check_aif_direct(f_y, f_yhat);
        holds = direct.holds;
        witness = direct.witness;
    }
    if (method == "mss" || method == "both") {
        const bool mss = check_aif_via_mss(f_y, f_yhat);
        if (method == "both" && mss != holds) {
            // The two routes are provably equivalent; disagreement means a
            // broken build, not a property violation.
            throw Error("direct and partition-coarsening checks disagree");
        }
        holds = mss;
    }

    if (c.pretty) {
        std::ostringstream out;
        out << "absolute IF " << (holds ? "holds" : "violated") << " (method " << method << ")\n";
        if (witness) out << "  witness pair: " << witness->p << ", " << witness->q << "\n";
        emit(c, out.str(), false);
    } else {
        nlohmann::json j;
        j["holds"] = holds;
        j["method"] = method;
        j["witness"] = witness ? nlohmann::json{{"p", witness->p}, {"q", witness->q}}
                               : nlohmann::json(nullptr);
        if (method == "both") j["methods_agree"] = true;
        emit(c, j.dump());
    }
    return holds ? kOk : kViolation;
}

// ---- generate ---------------------------------------------------------------

int run_generate(const Common& c, bool seed_given, const std::string& preset,
                 const std::string& config_path, const std::string& pop_out,
                 const std::string& scores_out, const std::string& config_out) {
    ScenarioConfig cfg;
    std::uint64_t seed_offset = 0;
    if (!preset.empty()) {
        cfg = scenario_preset(preset, c.seed).config;
        seed_offset = preset_seed_used(preset, c.seed);
        cfg.seed = c.seed + seed_offset;
    } else {
        cfg = parse_scenario_config(read_text_file(config_path));
        if (seed_given) cfg.seed = c.seed;
    }
    const ScoredPopulation sp = generate(cfg);

    write_text_file(pop_out, population_to_csv(sp.population()));
    write_text_file(scores_out, scores_to_csv(sp.scores()));
    if (!config_out.empty()) write_text_file(config_out, scenario_config_to_json(cfg));

    nlohmann::json groups = nlohmann::json::object();
    for (const GroupSpec& g : cfg.groups) groups[g.label] = g.count;
    if (c.pretty) {
        std::ostringstream out;
        out << "generated " << sp.population().size() << " individuals -> " << pop_out << ", "
            << scores_out << "\n";
        for (const GroupSpec& g : cfg.groups) out << "  " << g.label << ": " << g.count << "\n";
        emit(c, out.str(), false);
    } else {
        nlohmann::json j;
        j["n"] = sp.population().size();
        j["groups"] = std::move(groups);
        j["rng"] = cfg.rng;
        j["seed"] = cfg.seed;
        j["seed_offset"] = seed_offset;
        j["population_csv"] = pop_out;
        j["scores_csv"] = scores_out;
        if (cfg.preset_name) j["preset"] = *cfg.preset_name;
        emit(c, j.dump());
    }
    return kOk;
}

// ---- plotdata ---------------------------------------------------------------

int run_plotdata(const Common& c, const std::string& pop_path, const std::string& before_path,
                 const std::string& after_path, std::size_t bins) {
    if (bins < 1) throw InvalidSpec("--bins must be >= 1");
    const Population pop = read_population_csv_file(pop_path);
    const ScoredPopulation before(pop, read_scores_csv_file(before_path));
    const ScoredPopulation after(pop, read_scores_csv_file(after_path));
    if (pop.size() == 0) throw Error("plotdata needs a non-empty population");

    double lo = std::min(before.min_score(), after.min_score());
    double hi = std::max(before.max_score(), after.max_score());
    if (hi <= lo) hi = lo + 1.0;  // degenerate range still yields one usable bin
    const double width = (hi - lo) / static_cast<double>(bins);

    const auto bin_of = [&](double s) {
        const auto b = static_cast<std::size_t>((s - lo) / width);
        return std::min(b, bins - 1);  // scores equal to hi land in the last bin
    };

    const std::vector<std::string> groups = pop.groups();
    std::map<std::pair<std::size_t, std::string>, std::pair<std::size_t, std::size_t>> counts;
    for (const Individual& ind : pop.individuals()) {
        ++counts[{bin_of(before.score_of(ind.id)), ind.group}].first;
        ++counts[{bin_of(after.score_of(ind.id)), ind.group}].second;
    }

    std::ostringstream out;
    out << "bin_lo,bin_hi,group,count_before,count_after\n";
    for (std::size_t b = 0; b < bins; ++b) {
        const double bin_lo = lo + width * static_cast<double>(b);
        const double bin_hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
        for (const std::string& group : groups) {
            const auto it = counts.find({b, group});
            const auto [n_before, n_after] =
                it == counts.end() ? std::pair<std::size_t, std::size_t>{0, 0} : it->second;
            out << format_double(bin_lo) << ',' << format_double(bin_hi) << ',' << group << ','
                << n_before << ',' << n_after << '\n';
        }
    }
    emit(c, out.str(), false);
    return kOk;
}

// ---- validate-metric --------------------------------------------------------

int run_validate_metric(const Common& c, const std::string& metrics_path,
                        const std::string& pop_path, const std::string& scores_path,
                        std::size_t sample_size, std::size_t dim) {
    const PseudoMetricSpec spec = parse_metric_spec(read_text_file(metrics_path));
    MetricValidationReport report;

    if (spec.domain() == MetricDomain::UidSpace) {
        std::vector<std::string> uids;
        if (!pop_path.empty()) {
            for (const Individual& ind : read_population_csv_file(pop_path).individuals()) {
                if (!ind.uid) throw MissingUid(ind.id);
                uids.push_back(*ind.uid);
            }
        } else {
            for (std::size_t i = 0; i < sample_size; ++i) uids.push_back("u" + std::to_string(i));
        }
        report = validate_pseudometric_uids(spec, uids);
    } else {
        std::vector<std::vector<double>> points;
        if (spec.domain() == MetricDomain::FeatureSpace && !pop_path.empty()) {
            for (const Individual& ind : read_population_csv_file(pop_path).individuals()) {
                points.push_back(ind.features);
            }
        } else if (spec.domain() == MetricDomain::ScoreSpace && !scores_path.empty()) {
            for (const auto& [id, s] : read_scores_csv_file(scores_path)) points.push_back({s});
        } else {
            std::size_t k = dim;
            if (k == 0) {
                k = spec.kind() == MetricKind::WeightedLp ? spec.weights().size()
                    : spec.domain() == MetricDomain::ScoreSpace ? 1
                                                                : 2;
            }
            DetRng rng(mix_seed(c.seed, 0xA11D));
            for (std::size_t i = 0; i < sample_size; ++i) {
                std::vector<double> p;
                for (std::size_t f = 0; f < k; ++f) p.push_back(rng.uniform(0.0, 10.0));
                points.push_back(std::move(p));
            }
        }
        report = validate_pseudometric(spec, points);
    }

    if (c.pretty) {
        std::ostringstream out;
        out << "pseudo-metric axioms " << (report.passed ? "PASSED" : "FAILED") << " on "
            << report.n_points << " points\n";
        for (const MetricAxiomViolation& v : report.violations) {
            out << "  " << v.axiom << " violated\n";
        }
        emit(c, out.str(), false);
    } else {
        emit(c, metric_validation_report_to_json(report));
    }
    return report.passed ? kOk : kViolation;
}

// ---- check-transform --------------------------------------------------------

int run_check_transform(const Common& c, const std::string& transform_path, double lo, double hi,
                        std::size_t pairs, const std::vector<double>& boundary) {
    const ScoreTransform phi = parse_transform(read_text_file(transform_path));
    const NonExpansivenessReport report =
        check_nonexpansive(phi, lo, hi, pairs, c.seed, boundary);
    if (c.pretty) {
        std::ostringstream out;
        out << "non-expansiveness " << (report.passed ? "PASSED" : "FAILED") << " over ["
            << format_double(lo) << ", " << format_double(hi) << ") on " << report.checked_pairs
            << " pairs; max ratio " << format_double(report.max_ratio) << "\n";
        for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) {
            const auto& v = report.violations[i];
            out << "  |phi(" << format_double(v.p) << ") - phi(" << format_double(v.q)
                << ")| = " << format_double(v.d_phi) << " > " << format_double(v.d) << "\n";
        }
        emit(c, out.str(), false);
    } else {
        emit(c, nonexpansiveness_report_to_json(report));
    }
    return report.passed ? kOk : kViolation;
}

// ---- leibniz ----------------------------------------------------------------

int run_leibniz(const Common& c, const std::string& predictor_path, const std::string& table_path) {
    const DistributionTable predictor = parse_distribution_table(read_text_file(predictor_path));
    const DistributionTable table = parse_distribution_table(read_text_file(table_path));
    const LeibnizReport report = leibniz_audit(predictor, table);
    if (c.pretty) {
        std::ostringstream out;
        out << "distribution-table audit " << (report.passed ? "PASSED" : "FAILED") << " on "
            << report.checked << " individuals\n";
        for (const LeibnizMismatch& m : report.mismatches) {
            out << "  " << m.id << " differs at outcome " << m.outcome << "\n";
        }
        emit(c, out.str(), false);
    } else {
        emit(c, leibniz_report_to_json(report));
    }
    return report.passed ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Individual-fairness auditor and score-transform toolkit"};
    app.require_subcommand(1);

    Common c;

    // audit
    std::string pop_path, scores_path, metrics_path;
    double slack = 1e-12;
    auto* audit_cmd = app.add_subcommand("audit", "Pairwise Lipschitz fairness audit");
    audit_cmd->add_option("population", pop_path, "Population CSV")->required();
    audit_cmd->add_option("scores", scores_path, "Scores CSV")->required();
    audit_cmd->add_option("metrics", metrics_path, "Audit config JSON with metrics d and D")
        ->required();
    auto* slack_opt = audit_cmd->add_option("--slack", slack, "Override the config's slack");
    add_common(audit_cmd, c);

    // attack
    std::string transform_path, attack_scores_out, attack_direction = "at_or_above";
    double attack_t = 0.0;
    auto* attack_cmd = app.add_subcommand("attack", "Apply a score transform");
    attack_cmd->add_option("population", pop_path, "Population CSV")->required();
    attack_cmd->add_option("scores", scores_path, "Scores CSV")->required();
    attack_cmd->add_option("transform", transform_path, "Transform JSON")->required();
    auto* attack_t_opt = attack_cmd->add_option(
        "--threshold", attack_t, "Report before/after selection stats at this threshold");
    attack_cmd->add_option("--direction", attack_direction, "at_or_above (default) or below");
    attack_cmd->add_option("--scores-out", attack_scores_out, "Write transformed scores here");
    add_common(attack_cmd, c);

    // search
    std::string utility_path, search_metrics_path;
    std::string families = "translate,reflect,contract,collapse,local_contract,fold";
    std::size_t resolution = 16;
    auto* search_cmd = app.add_subcommand("search", "Brute-force best admissible transform");
    search_cmd->add_option("population", pop_path, "Population CSV")->required();
    search_cmd->add_option("scores", scores_path, "Scores CSV")->required();
    search_cmd->add_option("utility", utility_path, "Utility spec JSON")->required();
    search_cmd->add_option("--families", families, "Comma-separated transform families");
    search_cmd->add_option("--resolution", resolution, "Candidate grid resolution");
    search_cmd->add_option("--metrics", search_metrics_path,
                           "Audit config JSON for the winner's IF audit");
    add_common(search_cmd, c);

    // aif
    std::string fy_path, fyhat_path, method = "both";
    auto* aif_cmd = app.add_subcommand("aif", "Absolute individual fairness check");
    aif_cmd->add_option("f_y", fy_path, "Ground-truth distribution table JSON")->required();
    aif_cmd->add_option("f_yhat", fyhat_path, "Prediction distribution table JSON")->required();
    aif_cmd->add_option("--method", method, "direct, mss, or both (default)")
        ->check(CLI::IsMember({"direct", "mss", "both"}));
    add_common(aif_cmd, c);

    // generate
    std::string preset, config_path, config_out;
    std::string pop_out = "population.csv";
    std::string gen_scores_out = "scores.csv";
    auto* gen_cmd = app.add_subcommand("generate", "Generate a seeded synthetic population");
    auto* preset_opt = gen_cmd->add_option("--preset", preset, "Named scenario preset");
    auto* config_opt = gen_cmd->add_option("--config", config_path, "Scenario config JSON");
    preset_opt->excludes(config_opt);
    gen_cmd->add_option("--pop-out", pop_out, "Population CSV output path");
    gen_cmd->add_option("--scores-out", gen_scores_out, "Scores CSV output path");
    gen_cmd->add_option("--config-out", config_out, "Write the effective scenario config here");
    add_common(gen_cmd, c);

    // plotdata
    std::string before_path, after_path;
    std::size_t bins = 10;
    auto* plot_cmd = app.add_subcommand("plotdata", "Per-group before/after score histogram CSV");
    plot_cmd->add_option("population", pop_path, "Population CSV")->required();
    plot_cmd->add_option("before", before_path, "Scores CSV before the transform")->required();
    plot_cmd->add_option("after", after_path, "Scores CSV after the transform")->required();
    plot_cmd->add_option("--bins", bins, "Number of histogram bins (default 10)");
    add_common(plot_cmd, c);

    // validate-metric
    std::string vm_pop_path, vm_scores_path;
    std::size_t sample_size = 20, vm_dim = 0;
    auto* vm_cmd = app.add_subcommand("validate-metric", "Check the pseudo-metric axioms");
    vm_cmd->add_option("metrics", metrics_path, "Metric spec JSON")->required();
    vm_cmd->add_option("--population", vm_pop_path, "Sample feature vectors or uids from here");
    vm_cmd->add_option("--scores", vm_scores_path, "Sample score values from here");
    vm_cmd->add_option("--sample", sample_size, "Random sample size when no file given");
    vm_cmd->add_option("--dim", vm_dim, "Random sample dimension when no file given");
    add_common(vm_cmd, c);

    // check-transform
    double ct_lo = -100.0, ct_hi = 100.0;
    std::size_t ct_pairs = 10000;
    std::vector<double> ct_boundary;
    auto* ct_cmd = app.add_subcommand("check-transform", "Non-expansiveness oracle");
    ct_cmd->add_option("transform", transform_path, "Transform JSON")->required();
    ct_cmd->add_option("--lo", ct_lo, "Domain lower bound (default -100)");
    ct_cmd->add_option("--hi", ct_hi, "Domain upper bound (default 100)");
    ct_cmd->add_option("--pairs", ct_pairs, "Random pair count (default 10000)");
    ct_cmd->add_option("--boundary", ct_boundary, "Explicit boundary points");
    add_common(ct_cmd, c);

    // leibniz
    std::string predictor_path, table_path;
    auto* leibniz_cmd =
        app.add_subcommand("leibniz", "Exact audit against a per-individual distribution table");
    leibniz_cmd->add_option("predictor", predictor_path, "Predictor distribution table JSON")
        ->required();
    leibniz_cmd->add_option("table", table_path, "Reference distribution table JSON")->required();
    add_common(leibniz_cmd, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*audit_cmd) {
            return run_audit(c, pop_path, scores_path, metrics_path, slack, slack_opt->count() > 0);
        }
        if (*attack_cmd) {
            return run_attack(c, pop_path, scores_path, transform_path, attack_scores_out,
                              attack_t, attack_t_opt->count() > 0, attack_direction);
        }
        if (*search_cmd) {
            return run_search(c, pop_path, scores_path, utility_path, families, resolution,
                              search_metrics_path);
        }
        if (*aif_cmd) return run_aif(c, fy_path, fyhat_path, method);
        if (*gen_cmd) {
            if (preset.empty() && config_path.empty()) {
                throw InvalidSpec("generate needs --preset or --config");
            }
            return run_generate(c, gen_cmd->count("--seed") > 0, preset, config_path, pop_out,
                                gen_scores_out, config_out);
        }
        if (*plot_cmd) return run_plotdata(c, pop_path, before_path, after_path, bins);
        if (*vm_cmd) {
            return run_validate_metric(c, metrics_path, vm_pop_path, vm_scores_path, sample_size,
                                       vm_dim);
        }
        if (*ct_cmd) {
            return run_check_transform(c, transform_path, ct_lo, ct_hi, ct_pairs, ct_boundary);
        }
        if (*leibniz_cmd) return run_leibniz(c, predictor_path, table_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
