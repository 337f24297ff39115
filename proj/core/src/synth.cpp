#include "ifaudit/synth.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "ifaudit/audit.hpp"
#include "ifaudit/errors.hpp"

namespace ifaudit {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidConfig(std::string(what) + " must be finite");
}

std::string padded_token(char prefix, std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%c%04zu", prefix, n);
    return buf;
}

// Stream salts keep score, feature and any future draws independent even
// when group stream keys collide with other indices.
constexpr std::uint64_t kScoreSalt = 0x53434F5245ULL;
constexpr std::uint64_t kFeatureSalt = 0x46454154ULL;

}  // namespace

ScoreDistribution::ScoreDistribution(UniformDist d) : v_(d) {
    require_finite(d.lo, "uniform lo");
    require_finite(d.hi, "uniform hi");
    if (!(d.lo < d.hi)) throw InvalidConfig("uniform requires lo < hi");
}

ScoreDistribution::ScoreDistribution(NormalDist d) : v_(d) {
    require_finite(d.mean, "normal mean");
    require_finite(d.sd, "normal sd");
    if (!(d.sd > 0.0)) throw InvalidConfig("normal requires sd > 0");
}

ScoreDistribution::ScoreDistribution(PointMass d) : v_(d) {
    require_finite(d.value, "point mass value");
}

ScoreDistribution::ScoreDistribution(MixtureDist d) : v_(std::move(d)) {
    auto& mix = std::get<MixtureDist>(v_);
    if (mix.components.empty()) throw InvalidConfig("mixture needs at least one component");
    double total = 0.0;
    for (const MixtureComponent& c : mix.components) {
        require_finite(c.weight, "mixture weight");
        if (!(c.weight > 0.0)) throw InvalidConfig("mixture weights must be positive");
        total += c.weight;
    }
    for (MixtureComponent& c : mix.components) c.weight /= total;
}

double ScoreDistribution::sample(DetRng& rng) const {
    return std::visit(
        [&rng](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, UniformDist>) {
                return rng.uniform(d.lo, d.hi);
            } else if constexpr (std::is_same_v<T, NormalDist>) {
                return rng.normal(d.mean, d.sd);
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return d.value;
            } else {
                // One uniform draw walks the cumulative weights, then the
                // chosen component draws; reproducible and order-stable.
                const double u = rng.uniform01();
                double cum = 0.0;
                for (const MixtureComponent& c : d.components) {
                    cum += c.weight;
                    if (u < cum) return c.dist.sample(rng);
                }
                return d.components.back().dist.sample(rng);
            }
        },
        v_);
}

ScoredPopulation generate(const ScenarioConfig& cfg) {
    if (cfg.rng != kRngTag) {
        throw InvalidConfig("unsupported rng '" + cfg.rng + "', expected '" + kRngTag + "'");
    }
    if (cfg.groups.empty()) throw InvalidConfig("scenario needs at least one group");
    std::set<std::string> labels;
    for (const GroupSpec& g : cfg.groups) {
        if (g.label.empty()) throw InvalidConfig("group label must be non-empty");
        if (!labels.insert(g.label).second) {
            throw InvalidConfig("duplicate group label '" + g.label + "'");
        }
    }

    DetRng feature_rng(mix_seed(cfg.seed, kFeatureSalt));
    std::vector<Individual> people;
    std::map<std::string, double> scores;
    std::size_t next = 0;
    for (std::size_t gi = 0; gi < cfg.groups.size(); ++gi) {
        const GroupSpec& g = cfg.groups[gi];
        const std::uint64_t stream = g.stream.value_or(static_cast<std::uint64_t>(gi));
        DetRng score_rng(mix_seed(mix_seed(cfg.seed, kScoreSalt), stream));
        for (std::size_t k = 0; k < g.count; ++k, ++next) {
            Individual ind;
            ind.id = padded_token('i', next);
            ind.group = g.label;
            ind.features.reserve(cfg.feature_dim);
            for (std::size_t f = 0; f < cfg.feature_dim; ++f) {
                ind.features.push_back(feature_rng.uniform01());
            }
            if (cfg.assign_uids) ind.uid = padded_token('u', next);
            scores[ind.id] = g.dist.sample(score_rng);
            people.push_back(std::move(ind));
        }
    }
    return ScoredPopulation(Population(std::move(people), cfg.feature_dim), std::move(scores));
}

Preset scenario_preset(const std::string& name, std::uint64_t seed) {
    Preset p;
    p.config.seed = seed;
    p.config.preset_name = name;
    p.config.preset_version = 1;
    p.config.feature_dim = 1;
    if (name == "threshold_push") {
        // A sits just above a threshold at 3, B spans the whole range; a
        // small translation can push all of A below while barely moving B's
        // positive share.
        p.config.groups = {GroupSpec{"A", 40, ScoreDistribution(UniformDist{3.0, 4.0}), {}},
                           GroupSpec{"B", 60, ScoreDistribution(UniformDist{0.0, 10.0}), {}}};
        p.constraint = Preset::RatioConstraint{3.0, 4.0, "A", 1.5};
    } else if (name == "fold_target") {
        // A concentrated in an interior interval a fold can reverse.
        p.config.groups = {GroupSpec{"A", 30, ScoreDistribution(UniformDist{4.0, 6.0}), {}},
                           GroupSpec{"B", 70, ScoreDistribution(UniformDist{0.0, 10.0}), {}}};
        p.constraint = Preset::RatioConstraint{4.0, 6.0, "A", 1.5};
    } else if (name == "mirror_symmetric") {
        // Shared stream key: both groups draw the identical score sequence.
        p.config.groups = {GroupSpec{"A", 50, ScoreDistribution(UniformDist{0.0, 10.0}), 0},
                           GroupSpec{"B", 50, ScoreDistribution(UniformDist{0.0, 10.0}), 0}};
    } else if (name == "unique_id_vacuity") {
        p.config.assign_uids = true;
        p.config.groups = {GroupSpec{"A", 25, ScoreDistribution(UniformDist{0.0, 1.0}), {}},
                           GroupSpec{"B", 25, ScoreDistribution(UniformDist{0.0, 1.0}), {}}};
    } else {
        throw UnknownPreset(name);
    }
    return p;
}

namespace {

std::pair<ScoredPopulation, std::uint64_t> generate_with_constraint(const std::string& name,
                                                                    std::uint64_t seed) {
    const Preset preset = scenario_preset(name, seed);
    constexpr std::uint64_t kMaxRetries = 100;
    for (std::uint64_t offset = 0; offset <= kMaxRetries; ++offset) {
        ScenarioConfig cfg = preset.config;
        cfg.seed = seed + offset;
        ScoredPopulation sp = generate(cfg);
        if (!preset.constraint) return {std::move(sp), offset};
        const auto& c = *preset.constraint;
        const ConcentrationRecord rec = interval_concentration(sp, c.lo, c.hi, c.group);
        if (rec.overrepresentation_ratio && *rec.overrepresentation_ratio >= c.min_ratio) {
            return {std::move(sp), offset};
        }
    }
    throw InvalidConfig("preset '" + name + "' missed its concentration target after " +
                        std::to_string(kMaxRetries) + " retries");
}

}  // namespace

ScoredPopulation generate_preset(const std::string& name, std::uint64_t seed) {
    return generate_with_constraint(name, seed).first;
}

std::uint64_t preset_seed_used(const std::string& name, std::uint64_t seed) {
    return generate_with_constraint(name, seed).second;
}

}  // namespace ifaudit
