#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ifaudit/population.hpp"
#include "ifaudit/rng.hpp"

namespace ifaudit {

struct UniformDist {
    double lo;
    double hi;  // lo < hi; samples land in [lo, hi)
    bool operator==(const UniformDist&) const = default;
};

struct NormalDist {
    double mean;
    double sd;  // sd > 0
    bool operator==(const NormalDist&) const = default;
};

struct PointMass {
    double value;
    bool operator==(const PointMass&) const = default;
};

class ScoreDistribution;

struct MixtureComponent;

struct MixtureDist {
    std::vector<MixtureComponent> components;  // weights positive, normalized on construction
    bool operator==(const MixtureDist&) const = default;
};

class ScoreDistribution {
public:
    using Variant = std::variant<UniformDist, NormalDist, PointMass, MixtureDist>;

    ScoreDistribution(UniformDist d);
    ScoreDistribution(NormalDist d);
    ScoreDistribution(PointMass d);
    ScoreDistribution(MixtureDist d);

    const Variant& value() const { return v_; }

    double sample(DetRng& rng) const;

    bool operator==(const ScoreDistribution&) const = default;

private:
    Variant v_;
};

struct MixtureComponent {
    double weight;
    ScoreDistribution dist;
    bool operator==(const MixtureComponent&) const = default;
};

struct GroupSpec {
    std::string label;
    std::size_t count = 0;
    ScoreDistribution dist;
    // Score sub-stream key; defaults to the group's position in the list.
    // Two groups sharing a stream key draw identical score sequences.
    std::optional<std::uint64_t> stream;

    bool operator==(const GroupSpec&) const = default;
};

struct ScenarioConfig {
    std::vector<GroupSpec> groups;
    std::size_t feature_dim = 0;
    bool assign_uids = false;
    std::uint64_t seed = 0;
    std::string rng = kRngTag;
    std::optional<std::string> preset_name;
    std::optional<int> preset_version;

    bool operator==(const ScenarioConfig&) const = default;
};

// Deterministic given the seed. Group sizes are exact; features are i.i.d.
// uniform(0,1) per dimension from a dedicated stream; ids are sequential
// ("i0000", ...) and uids, when requested, unique tokens ("u0000", ...).
ScoredPopulation generate(const ScenarioConfig& cfg);  // throws InvalidConfig

struct Preset {
    ScenarioConfig config;

    // Post-generation requirement for presets that target an interval.
    struct RatioConstraint {
        double lo;
        double hi;
        std::string group;
        double min_ratio;
    };
    std::optional<RatioConstraint> constraint;
};

// Named, versioned scenario builders:
//   threshold_push    A concentrated just above the threshold, B spread wide
//   fold_target       A concentrated in an interior score interval, B spread
//   mirror_symmetric  two groups with identical score multisets
//   unique_id_vacuity all-distinct uids, arbitrary scores
Preset scenario_preset(const std::string& name, std::uint64_t seed);  // throws UnknownPreset

// generate() plus the preset's ratio constraint: regenerates with an
// incremented seed offset when the constraint misses, at most 100 retries.
ScoredPopulation generate_preset(const std::string& name, std::uint64_t seed);

// The seed offset at which generate_preset settles (0 when the first draw
// already satisfies the constraint).
std::uint64_t preset_seed_used(const std::string& name, std::uint64_t seed);

}  // namespace ifaudit
