#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ifaudit/distribution.hpp"
#include "ifaudit/metrics.hpp"
#include "ifaudit/population.hpp"

namespace ifaudit {

struct AuditConfig {
    PseudoMetricSpec d;  // individual space; feature-space or uid-space
    PseudoMetricSpec D;  // prediction space; score-space only
    double slack = 1e-12;

    AuditConfig(PseudoMetricSpec d, PseudoMetricSpec D, double slack = 1e-12);
};

struct AuditViolation {
    std::string p;
    std::string q;
    double d_value;
    double D_value;
    bool operator==(const AuditViolation&) const = default;
};

struct AuditReport {
    bool passed = true;
    std::size_t n_pairs = 0;
    std::vector<AuditViolation> violations;  // sorted by (p, q)
    double max_slack_used = 0.0;             // largest D-d excess among passing pairs
    double slack = 0.0;
};

// Exhaustive pairwise Lipschitz check: D(score_p, score_q) <= d(p, q) + slack
// over all unordered pairs. Deterministic; independent of individual order.
// Exhaustive enumeration is quadratic, sized for desk-scale populations
// (n up to ~20,000).
AuditReport audit_if(const ScoredPopulation& sp, const AuditConfig& cfg);

struct GroupRecord {
    std::size_t count = 0;
    std::size_t positives = 0;
    double selection_rate = 0.0;
    bool operator==(const GroupRecord&) const = default;
};

struct ConcentrationRecord {
    double lo = 0.0;
    double hi = 0.0;
    std::string group;
    std::size_t interval_total = 0;                   // individuals with score in [lo, hi]
    std::optional<double> fraction_of_interval;       // unset when the interval is empty
    double base_rate = 0.0;                           // group share of the population
    std::optional<double> overrepresentation_ratio;   // fraction / base_rate when defined
};

struct GroupStats {
    std::map<std::string, GroupRecord> per_group;
    double spd = 0.0;  // max pairwise selection-rate difference
    std::optional<ConcentrationRecord> interval_concentration;
};

// Per-group positive counts and rates at the threshold.
GroupStats selection_rates(const ScoredPopulation& sp, const Threshold& th);

// Who occupies scores in [lo, hi], and how overrepresented `group` is there
// relative to its population share. An empty interval is reported with an
// undefined fraction, not thrown.
ConcentrationRecord interval_concentration(const ScoredPopulation& sp, double lo, double hi,
                                           const std::string& group);

// A fully specified per-individual prediction distribution; rigid by design,
// audited with exact equality.
using LeibnizTable = DistributionTable;

struct LeibnizMismatch {
    std::string id;
    std::string outcome;  // first differing outcome label
    bool operator==(const LeibnizMismatch&) const = default;
};

struct LeibnizReport {
    bool passed = true;
    std::size_t checked = 0;
    std::vector<LeibnizMismatch> mismatches;
};

// Passes iff for every id in `table` the predictor's distribution equals the
// table's exactly (rational equality, no tolerance). Predictor ids beyond the
// table are ignored; a table id missing from the predictor is an error.
LeibnizReport leibniz_audit(const DistributionTable& predictor_dists, const LeibnizTable& table);

}  // namespace ifaudit
