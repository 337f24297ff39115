#include "ifaudit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ifaudit/rng.hpp"

namespace ifaudit {

namespace {

void require_finite_param(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidSpec(std::string("transform parameter '") + name + "' must be finite");
    }
}

}  // namespace

Translation::Translation(double c) : offset(c) { require_finite_param(c, "c"); }

Reflection::Reflection(double center) : center(center) { require_finite_param(center, "center"); }

Contraction::Contraction(double factor, double center) : factor(factor), center(center) {
    require_finite_param(factor, "k");
    require_finite_param(center, "center");
    if (factor < 0.0 || factor >= 1.0) throw InvalidSpec("contraction requires 0 <= k < 1");
}

ConstantCollapse::ConstantCollapse(double value) : value(value) {
    require_finite_param(value, "y_star");
}

LocalContraction::LocalContraction(double lo, double hi, double target)
    : lo(lo), hi(hi), target(target) {
    require_finite_param(lo, "t");
    require_finite_param(hi, "t_prime");
    require_finite_param(target, "t_star");
    if (!(lo < hi)) throw InvalidSpec("local contraction requires t < t_prime");
    if (target < lo || target > hi) {
        throw InvalidSpec("local contraction requires t <= t_star <= t_prime");
    }
}

Folding::Folding(double a, double b) : a(a), b(b) {
    require_finite_param(a, "a");
    require_finite_param(b, "b");
    if (!(a < b)) throw InvalidSpec("folding requires a < b");
}

Composition::Composition(std::vector<ScoreTransform> steps) : steps(std::move(steps)) {
    if (this->steps.empty()) throw InvalidSpec("composition must have at least one step");
}

double apply_transform(const ScoreTransform& phi, double y) {
    if (!std::isfinite(y)) throw NonFiniteInput();
    return std::visit(
        [y](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, Translation>) {
                return y + t.offset;
            } else if constexpr (std::is_same_v<T, Reflection>) {
                return -y + 2.0 * t.center;
            } else if constexpr (std::is_same_v<T, Contraction>) {
                return t.center + t.factor * (y - t.center);
            } else if constexpr (std::is_same_v<T, ConstantCollapse>) {
                return t.value;
            } else if constexpr (std::is_same_v<T, LocalContraction>) {
                if (y < t.lo) return y + (t.target - t.lo);
                if (y > t.hi) return y - (t.hi - t.target);
                return t.target;
            } else if constexpr (std::is_same_v<T, Folding>) {
                if (y > t.b) return y - 2.0 * (t.b - t.a);
                if (y >= t.a) return -y + 2.0 * t.a;
                return y;
            } else {
                double acc = y;
                for (const ScoreTransform& step : t.steps) acc = apply_transform(step, acc);
                return acc;
            }
        },
        phi.value());
}

ScoredPopulation apply_to_scored(const ScoreTransform& phi, const ScoredPopulation& sp) {
    std::map<std::string, double> transformed;
    for (const auto& [id, score] : sp.scores()) {
        transformed[id] = apply_transform(phi, score);
    }
    return ScoredPopulation(sp.population(), std::move(transformed));
}

namespace {

void collect_knots(const ScoreTransform& phi, std::set<double>& knots) {
    std::visit(
        [&knots](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, Reflection>) {
                knots.insert(t.center);
            } else if constexpr (std::is_same_v<T, Contraction>) {
                knots.insert(t.center);
            } else if constexpr (std::is_same_v<T, ConstantCollapse>) {
                knots.insert(t.value);
            } else if constexpr (std::is_same_v<T, LocalContraction>) {
                const double step = std::max(1.0, t.hi - t.lo);
                knots.insert({t.lo - step, t.lo, t.target, t.hi, t.hi + step});
            } else if constexpr (std::is_same_v<T, Folding>) {
                // Two points per region so every one of the six region pairs
                // shows up among the all-pairs checks.
                const double step = std::max(1.0, t.b - t.a);
                knots.insert({t.a - step, t.a - step / 2.0, t.a, (t.a + t.b) / 2.0, t.b,
                              t.b + step / 2.0, t.b + step});
            } else if constexpr (std::is_same_v<T, Composition>) {
                for (const ScoreTransform& s : t.steps) collect_knots(s, knots);
            }
        },
        phi.value());
}

}  // namespace

std::vector<double> default_boundary_points(const ScoreTransform& phi, double domain_lo,
                                            double domain_hi) {
    std::set<double> knots;
    knots.insert({domain_lo, (domain_lo + domain_hi) / 2.0, domain_hi});
    collect_knots(phi, knots);
    return {knots.begin(), knots.end()};
}

NonExpansivenessReport check_nonexpansive_fn(const std::function<double(double)>& phi,
                                             double domain_lo, double domain_hi,
                                             std::size_t n_random_pairs, std::uint64_t rng_seed,
                                             std::vector<double> boundary_points, double slack) {
    if (!(domain_lo < domain_hi) || !std::isfinite(domain_lo) || !std::isfinite(domain_hi)) {
        throw InvalidDomain(domain_lo, domain_hi);
    }
    if (n_random_pairs < 1) throw Error("n_random_pairs must be >= 1");

    NonExpansivenessReport report;
    double best_ratio = -1.0;

    auto check_pair = [&](double p, double q) {
        const double d = std::abs(p - q);
        const double d_phi = std::abs(phi(p) - phi(q));
        ++report.checked_pairs;
        if (d > 0.0 && d_phi / d > best_ratio) {
            best_ratio = d_phi / d;
            report.max_ratio_pair = {p, q, d_phi, d};
        }
        if (d_phi > d + slack) {
            report.violations.push_back({p, q, d_phi, d});
        }
    };

    DetRng rng(rng_seed);
    std::vector<double> random_points;
    random_points.reserve(2 * n_random_pairs);
    for (std::size_t i = 0; i < n_random_pairs; ++i) {
        const double p = rng.uniform(domain_lo, domain_hi);
        const double q = rng.uniform(domain_lo, domain_hi);
        random_points.push_back(p);
        random_points.push_back(q);
        check_pair(p, q);
    }

    for (std::size_t i = 0; i < boundary_points.size(); ++i) {
        for (std::size_t j = i + 1; j < boundary_points.size(); ++j) {
            check_pair(boundary_points[i], boundary_points[j]);
        }
    }
    for (double r : random_points) {
        for (double b : boundary_points) check_pair(r, b);
    }

    report.max_ratio = best_ratio < 0.0 ? 0.0 : best_ratio;
    report.passed = report.violations.empty();
    return report;
}

NonExpansivenessReport check_nonexpansive(const ScoreTransform& phi, double domain_lo,
                                          double domain_hi, std::size_t n_random_pairs,
                                          std::uint64_t rng_seed,
                                          std::vector<double> boundary_points) {
    if (boundary_points.empty()) {
        boundary_points = default_boundary_points(phi, domain_lo, domain_hi);
    }
    return check_nonexpansive_fn([&phi](double y) { return apply_transform(phi, y); }, domain_lo,
                                 domain_hi, n_random_pairs, rng_seed, std::move(boundary_points));
}

bool isometry_check(const ScoreTransform& phi, const std::vector<std::pair<double, double>>& pairs,
                    double slack) {
    if (pairs.empty()) throw Error("isometry check requires at least one pair");
    for (const auto& [p, q] : pairs) {
        const double d = std::abs(p - q);
        const double d_phi = std::abs(apply_transform(phi, p) - apply_transform(phi, q));
        if (std::abs(d_phi - d) > slack) return false;
    }
    return true;
}

}  // namespace ifaudit
