#include "ifaudit/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "ifaudit/rng.hpp"

namespace ifaudit {

UtilitySpec::UtilitySpec(Threshold threshold, std::map<std::string, double> weight_per_group)
    : threshold(threshold), weight_per_group(std::move(weight_per_group)) {
    for (const auto& [group, w] : this->weight_per_group) {
        if (!std::isfinite(w)) throw InvalidSpec("non-finite weight for group '" + group + "'");
    }
}

double utility(const ScoredPopulation& sp, const UtilitySpec& u) {
    double total = 0.0;
    for (const Individual& ind : sp.population().individuals()) {
        if (!u.threshold.is_positive(sp.score_of(ind.id))) continue;
        auto it = u.weight_per_group.find(ind.group);
        if (it != u.weight_per_group.end()) total += it->second;
    }
    return total;
}

TransformFamily parse_family(const std::string& name) {
    if (name == "translate") return TransformFamily::Translate;
    if (name == "reflect") return TransformFamily::Reflect;
    if (name == "contract") return TransformFamily::Contract;
    if (name == "collapse") return TransformFamily::Collapse;
    if (name == "local_contract") return TransformFamily::LocalContract;
    if (name == "fold") return TransformFamily::Fold;
    throw UnknownFamily(name);
}

std::string to_string(TransformFamily family) {
    switch (family) {
        case TransformFamily::Translate: return "translate";
        case TransformFamily::Reflect: return "reflect";
        case TransformFamily::Contract: return "contract";
        case TransformFamily::Collapse: return "collapse";
        case TransformFamily::LocalContract: return "local_contract";
        case TransformFamily::Fold: return "fold";
    }
    throw UnknownFamily("<corrupt family value>");
}

namespace {

constexpr double kEps = 1e-9;

// Canonical ordering key so grids are sorted and exactly deduplicable.
using GridKey = std::tuple<int, double, double, double>;

GridKey grid_key(const ScoreTransform& phi) {
    return std::visit(
        [](const auto& t) -> GridKey {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, Translation>) {
                return {0, t.offset, 0.0, 0.0};
            } else if constexpr (std::is_same_v<T, Reflection>) {
                return {1, t.center, 0.0, 0.0};
            } else if constexpr (std::is_same_v<T, Contraction>) {
                return {2, t.center, t.factor, 0.0};
            } else if constexpr (std::is_same_v<T, ConstantCollapse>) {
                return {3, t.value, 0.0, 0.0};
            } else if constexpr (std::is_same_v<T, LocalContraction>) {
                return {4, t.lo, t.hi, t.target};
            } else if constexpr (std::is_same_v<T, Folding>) {
                return {5, t.a, t.b, 0.0};
            } else {
                return {6, 0.0, 0.0, 0.0};  // compositions never appear in grids
            }
        },
        phi.value());
}

// Observed scores, midpoints between adjacent distinct scores, threshold-
// relative points. Capped to `resolution` evenly spaced picks before the
// threshold points are re-added.
std::vector<double> anchor_points(const ScoredPopulation& sp, std::size_t resolution,
                                  const Threshold& th) {
    const std::vector<double> observed = sp.scores_in_order();
    std::set<double> base(observed.begin(), observed.end());
    std::vector<double> sorted(base.begin(), base.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        base.insert((sorted[i] + sorted[i + 1]) / 2.0);
    }
    std::vector<double> anchors(base.begin(), base.end());
    if (anchors.size() > resolution) {
        std::vector<double> picked;
        picked.reserve(resolution);
        for (std::size_t i = 0; i < resolution; ++i) {
            const std::size_t idx =
                resolution == 1 ? 0 : i * (anchors.size() - 1) / (resolution - 1);
            picked.push_back(anchors[idx]);
        }
        anchors = std::move(picked);
    }
    std::set<double> out(anchors.begin(), anchors.end());
    out.insert({th.t, th.t - kEps, th.t + kEps});
    return {out.begin(), out.end()};
}

}  // namespace

std::vector<ScoreTransform> candidate_grid(const ScoredPopulation& sp, TransformFamily family,
                                           std::size_t resolution, const Threshold& th) {
    if (resolution < 1) throw InvalidSpec("resolution must be >= 1");
    const std::vector<double> anchors = anchor_points(sp, resolution, th);

    std::vector<ScoreTransform> grid;
    grid.push_back(ScoreTransform::identity());

    switch (family) {
        case TransformFamily::Translate: {
            std::set<double> offsets{0.0};
            for (double a : anchors) {
                for (double base : {th.t - a, a - th.t}) {
                    offsets.insert({base, base - kEps, base + kEps});
                }
            }
            for (double c : offsets) grid.push_back(Translation(c));
            break;
        }
        case TransformFamily::Reflect:
            for (double a : anchors) grid.push_back(Reflection(a));
            break;
        case TransformFamily::Contract: {
            const std::size_t nk = std::min<std::size_t>(resolution, 8);
            for (double a : anchors) {
                for (std::size_t i = 0; i < nk; ++i) {
                    grid.push_back(Contraction(static_cast<double>(i) / static_cast<double>(nk), a));
                }
            }
            break;
        }
        case TransformFamily::Collapse:
            for (double a : anchors) grid.push_back(ConstantCollapse(a));
            break;
        case TransformFamily::LocalContract:
            for (std::size_t i = 0; i < anchors.size(); ++i) {
                for (std::size_t j = i + 1; j < anchors.size(); ++j) {
                    const double lo = anchors[i];
                    const double hi = anchors[j];
                    for (double target : {lo, (lo + hi) / 2.0, hi}) {
                        grid.push_back(LocalContraction(lo, hi, target));
                    }
                }
            }
            break;
        case TransformFamily::Fold:
            for (std::size_t i = 0; i < anchors.size(); ++i) {
                for (std::size_t j = i + 1; j < anchors.size(); ++j) {
                    grid.push_back(Folding(anchors[i], anchors[j]));
                }
            }
            break;
    }

    std::sort(grid.begin(), grid.end(), [](const ScoreTransform& a, const ScoreTransform& b) {
        return grid_key(a) < grid_key(b);
    });
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](const ScoreTransform& a, const ScoreTransform& b) {
                               return grid_key(a) == grid_key(b);
                           }),
               grid.end());
    return grid;
}

namespace {

// Audit of a transformed scoring against the predictor's own pre-transform
// score geometry: |phi(s_p) - phi(s_q)| <= |s_p - s_q| + slack for all pairs.
bool default_audit(const ScoredPopulation& before, const ScoredPopulation& after, double slack) {
    const std::vector<double> s = before.scores_in_order();
    const std::vector<double> t = after.scores_in_order();
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (std::abs(t[i] - t[j]) > std::abs(s[i] - s[j]) + slack) return false;
        }
    }
    return true;
}

}  // namespace

AttackResult search_attack(const ScoredPopulation& sp, const UtilitySpec& u,
                           const std::vector<TransformFamily>& families, std::size_t resolution,
                           const std::optional<AuditConfig>& cfg, std::uint64_t seed) {
    if (sp.population().size() == 0) throw Error("search requires a non-empty population");

    // Dedup across families, identity pinned to the front so ties land on it.
    std::vector<ScoreTransform> candidates{ScoreTransform::identity()};
    std::set<GridKey> seen{grid_key(candidates.front())};
    for (TransformFamily family : families) {
        for (ScoreTransform& phi : candidate_grid(sp, family, resolution, u.threshold)) {
            if (seen.insert(grid_key(phi)).second) candidates.push_back(std::move(phi));
        }
    }

    double lo = sp.min_score();
    double hi = sp.max_score();
    if (hi - lo < kEps) {
        lo -= 1.0;
        hi += 1.0;
    }

    AttackResult result;
    result.stats_before = selection_rates(sp, u.threshold);
    result.baseline_utility = utility(sp, u);

    bool have_best = false;
    ScoredPopulation best_sp = sp;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        const ScoreTransform& phi = candidates[idx];
        const auto check = check_nonexpansive(phi, lo, hi, 200, mix_seed(seed, idx));
        if (!check.passed) continue;
        ScoredPopulation transformed = apply_to_scored(phi, sp);
        const double score = utility(transformed, u);
        ++result.candidates_evaluated;
        if (!have_best || score > result.best_utility) {
            have_best = true;
            result.best_transform = phi;
            result.best_utility = score;
            best_sp = std::move(transformed);
        }
    }
    if (!have_best) throw NoAdmissibleCandidate();

    result.stats_after = selection_rates(best_sp, u.threshold);
    result.audit_passed = cfg ? audit_if(best_sp, *cfg).passed
                              : default_audit(sp, best_sp, 1e-12);
    return result;
}

}  // namespace ifaudit
