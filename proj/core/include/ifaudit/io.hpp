#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "ifaudit/aif.hpp"
#include "ifaudit/audit.hpp"
#include "ifaudit/metrics.hpp"
#include "ifaudit/population.hpp"
#include "ifaudit/search.hpp"
#include "ifaudit/synth.hpp"
#include "ifaudit/transforms.hpp"

namespace ifaudit {

// ---- CSV --------------------------------------------------------------
// Population CSV: header `id,group,uid,f1,...,fk`; uid column may be empty.
// Scores CSV: header `id,score`. UTF-8, comma separated, '.' decimal point,
// no quoting (fields must not contain commas or line breaks). Floats are
// written in shortest round-trip form.

Population read_population_csv(std::istream& in);
Population read_population_csv_file(const std::string& path);
void write_population_csv(const Population& pop, std::ostream& out);
std::string population_to_csv(const Population& pop);

std::map<std::string, double> read_scores_csv(std::istream& in);
std::map<std::string, double> read_scores_csv_file(const std::string& path);
void write_scores_csv(const std::map<std::string, double>& scores, std::ostream& out);
std::string scores_to_csv(const std::map<std::string, double>& scores);

// ---- JSON specs ---------------------------------------------------------
// Metric spec:    {"kind":"euclidean"} | {"kind":"discrete","domain":"uid-space"}
//                 | {"kind":"weighted_lp","p":2,"weights":[...]}
//                 | {"kind":"capped_euclidean","cap":1.0}
// Audit config:   {"d":<metric spec>,"D":<metric spec>,"slack":1e-12}
//                 (d defaults to feature-space, D to score-space)
// Transform:      {"kind":"fold","a":1.0,"b":3.0} | {"kind":"translate","c":-2.5}
//                 | {"kind":"reflect","center":0.0}
//                 | {"kind":"contract","k":0.5,"center":0.0}
//                 | {"kind":"collapse","y_star":0.0}
//                 | {"kind":"local_contract","t":0.0,"t_prime":2.0,"t_star":1.0}
//                 | {"kind":"compose","steps":[...]}
// Utility spec:   {"threshold":{"t":3.0,"direction":"at_or_above"},"weights":{"A":-1.0}}
// Distributions:  {"outcomes":["y0","y1"],"rows":{"x1":[["1","2"],["1","2"]]}}
//                 with rationals as [numerator, denominator] decimal strings.

PseudoMetricSpec parse_metric_spec(const std::string& json_text,
                                   MetricDomain default_domain = MetricDomain::FeatureSpace);
std::string metric_spec_to_json(const PseudoMetricSpec& spec);

AuditConfig parse_audit_config(const std::string& json_text);
std::string audit_config_to_json(const AuditConfig& cfg);

ScoreTransform parse_transform(const std::string& json_text);
std::string transform_to_json(const ScoreTransform& phi);

UtilitySpec parse_utility_spec(const std::string& json_text);
std::string utility_spec_to_json(const UtilitySpec& u);

DistributionTable parse_distribution_table(const std::string& json_text);
std::string distribution_table_to_json(const DistributionTable& table);

ScenarioConfig parse_scenario_config(const std::string& json_text);
std::string scenario_config_to_json(const ScenarioConfig& cfg);

// ---- JSON reports -------------------------------------------------------
// Compact, keys sorted, no timestamps: byte-identical across runs.

std::string audit_report_to_json(const AuditReport& report);
std::string group_stats_to_json(const GroupStats& stats);
std::string concentration_to_json(const ConcentrationRecord& rec);
std::string nonexpansiveness_report_to_json(const NonExpansivenessReport& report);
std::string attack_result_to_json(const AttackResult& result);
std::string metric_validation_report_to_json(const MetricValidationReport& report);
std::string leibniz_report_to_json(const LeibnizReport& report);
std::string partition_to_json(const Partition& partition);

// Shortest round-trip decimal form of a double (also used for CSV output).
std::string format_double(double v);

// Reads a whole file; throws Error when the file cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ifaudit
