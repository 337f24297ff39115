#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "ifaudit/population.hpp"

namespace ifaudit {

// y -> y + offset
struct Translation {
    double offset;
    explicit Translation(double c);
    bool operator==(const Translation&) const = default;
};

// y -> -y + 2*center; fixes center.
struct Reflection {
    double center;
    explicit Reflection(double center);
    bool operator==(const Reflection&) const = default;
};

// y -> center + factor*(y - center), 0 <= factor < 1.
struct Contraction {
    double factor;
    double center;
    Contraction(double factor, double center);
    bool operator==(const Contraction&) const = default;
};

// y -> value for all y.
struct ConstantCollapse {
    double value;
    explicit ConstantCollapse(double value);
    bool operator==(const ConstantCollapse&) const = default;
};

// Collapses [lo, hi] to target (lo <= target <= hi); shifts the outside
// ranges toward it so no pairwise distance grows:
//   y < lo  ->  y + (target - lo)
//   y > hi  ->  y - (hi - target)
struct LocalContraction {
    double lo;
    double hi;
    double target;
    LocalContraction(double lo, double hi, double target);
    bool operator==(const LocalContraction&) const = default;
};

// Reverses scores inside [a, b], translates the range above b down by
// 2*(b-a), leaves the range below a unchanged:
//   y > b        ->  y - 2*(b - a)
//   y in [a, b]  ->  -y + 2*a
//   y < a        ->  y
struct Folding {
    double a;
    double b;
    Folding(double a, double b);
    bool operator==(const Folding&) const = default;
};

class ScoreTransform;

// Applies steps left to right. Non-empty.
struct Composition {
    std::vector<ScoreTransform> steps;
    explicit Composition(std::vector<ScoreTransform> steps);
    bool operator==(const Composition&) const = default;
};

class ScoreTransform {
public:
    using Variant = std::variant<Translation, Reflection, Contraction, ConstantCollapse,
                                 LocalContraction, Folding, Composition>;

    ScoreTransform(Translation v) : v_(std::move(v)) {}
    ScoreTransform(Reflection v) : v_(std::move(v)) {}
    ScoreTransform(Contraction v) : v_(std::move(v)) {}
    ScoreTransform(ConstantCollapse v) : v_(std::move(v)) {}
    ScoreTransform(LocalContraction v) : v_(std::move(v)) {}
    ScoreTransform(Folding v) : v_(std::move(v)) {}
    ScoreTransform(Composition v) : v_(std::move(v)) {}

    const Variant& value() const { return v_; }

    static ScoreTransform identity() { return ScoreTransform(Translation(0.0)); }

    bool operator==(const ScoreTransform&) const = default;

private:
    Variant v_;
};

// phi(y). Throws NonFiniteInput on a non-finite y.
double apply_transform(const ScoreTransform& phi, double y);

// Same population, every score replaced by apply_transform.
ScoredPopulation apply_to_scored(const ScoreTransform& phi, const ScoredPopulation& sp);

struct NonExpansivenessReport {
    struct Pair {
        double p = 0.0;
        double q = 0.0;
        double d_phi = 0.0;  // |phi(p) - phi(q)|
        double d = 0.0;      // |p - q|
    };

    bool passed = true;
    std::size_t checked_pairs = 0;
    double max_ratio = 0.0;  // max d_phi/d over checked pairs with d > 0
    Pair max_ratio_pair;
    std::vector<Pair> violations;
};

// Points chosen so every piecewise branch pair of phi is exercised; for a
// folding this covers both-below, both-inside, both-above and the three
// mixed region combinations.
std::vector<double> default_boundary_points(const ScoreTransform& phi, double domain_lo,
                                            double domain_hi);

// Randomized + boundary oracle for |phi(p)-phi(q)| <= |p-q| + slack. Tests
// n_random_pairs seeded uniform pairs from [domain_lo, domain_hi), all pairs
// of boundary points, and all (random point, boundary point) pairs. An empty
// boundary_points list selects default_boundary_points.
NonExpansivenessReport check_nonexpansive(const ScoreTransform& phi, double domain_lo,
                                          double domain_hi, std::size_t n_random_pairs,
                                          std::uint64_t rng_seed,
                                          std::vector<double> boundary_points = {});

// Same oracle over an arbitrary map; lets tests probe deliberately expanding
// maps that the transform family cannot express.
NonExpansivenessReport check_nonexpansive_fn(const std::function<double(double)>& phi,
                                             double domain_lo, double domain_hi,
                                             std::size_t n_random_pairs, std::uint64_t rng_seed,
                                             std::vector<double> boundary_points,
                                             double slack = 1e-12);

// True iff | |phi(p)-phi(q)| - |p-q| | <= slack for every pair.
bool isometry_check(const ScoreTransform& phi,
                    const std::vector<std::pair<double, double>>& pairs, double slack = 1e-12);

}  // namespace ifaudit
