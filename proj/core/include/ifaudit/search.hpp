#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ifaudit/audit.hpp"
#include "ifaudit/population.hpp"
#include "ifaudit/transforms.hpp"

namespace ifaudit {

// Linear attacker utility: each positive-class member contributes the weight
// of their group. Negative weight = the attacker wants them excluded.
// Groups without an entry weigh 0.
struct UtilitySpec {
    Threshold threshold;
    std::map<std::string, double> weight_per_group;

    UtilitySpec(Threshold threshold, std::map<std::string, double> weight_per_group);
};

double utility(const ScoredPopulation& sp, const UtilitySpec& u);

enum class TransformFamily { Translate, Reflect, Contract, Collapse, LocalContract, Fold };

TransformFamily parse_family(const std::string& name);  // throws UnknownFamily
std::string to_string(TransformFamily family);

// Deterministic, sorted, deduplicated candidate transforms for one family.
// Parameters are drawn from the observed score values, the midpoints between
// adjacent distinct scores, and threshold-relative offsets (t and t +/- 1e-9);
// `resolution` caps the anchor set. The identity Translation(0) is always
// included.
std::vector<ScoreTransform> candidate_grid(const ScoredPopulation& sp, TransformFamily family,
                                           std::size_t resolution, const Threshold& th);

struct AttackResult {
    ScoreTransform best_transform = ScoreTransform::identity();
    double best_utility = 0.0;
    double baseline_utility = 0.0;      // utility of the identity transform
    std::size_t candidates_evaluated = 0;
    bool audit_passed = false;          // IF audit of the winner's output
    GroupStats stats_before;
    GroupStats stats_after;
};

// Brute-force search over the families' candidate grids. Only candidates
// whose non-expansiveness check passes over the observed score range are
// admissible. Ties break toward the identity, then grid order. When `cfg` is
// absent the winner is audited against d(p,q) = |s_p - s_q| over the
// pre-transform scores (the predictor's own score geometry).
AttackResult search_attack(const ScoredPopulation& sp, const UtilitySpec& u,
                           const std::vector<TransformFamily>& families, std::size_t resolution,
                           const std::optional<AuditConfig>& cfg = std::nullopt,
                           std::uint64_t seed = 0x1FA15EEDULL);

}  // namespace ifaudit
