#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ifaudit/population.hpp"

namespace ifaudit {

enum class MetricKind { Trivial, Discrete, Euclidean, WeightedLp, CappedEuclidean };
enum class MetricDomain { FeatureSpace, ScoreSpace, UidSpace };

std::string to_string(MetricKind kind);
std::string to_string(MetricDomain domain);

// Declarative pseudo-metric description. On uid-space only the trivial and
// discrete kinds are meaningful; anything else is rejected.
class PseudoMetricSpec {
public:
    static PseudoMetricSpec trivial(MetricDomain domain = MetricDomain::FeatureSpace);
    static PseudoMetricSpec discrete(MetricDomain domain = MetricDomain::FeatureSpace);
    static PseudoMetricSpec euclidean(MetricDomain domain = MetricDomain::ScoreSpace);
    static PseudoMetricSpec weighted_lp(double exponent, std::vector<double> weights,
                                        MetricDomain domain = MetricDomain::FeatureSpace);
    static PseudoMetricSpec capped_euclidean(double cap,
                                             MetricDomain domain = MetricDomain::ScoreSpace);

    MetricKind kind() const { return kind_; }
    MetricDomain domain() const { return domain_; }
    double exponent() const { return exponent_; }
    const std::vector<double>& weights() const { return weights_; }
    double cap() const { return cap_; }

    bool operator==(const PseudoMetricSpec&) const = default;

private:
    PseudoMetricSpec(MetricKind kind, MetricDomain domain) : kind_(kind), domain_(domain) {}

    MetricKind kind_;
    MetricDomain domain_;
    double exponent_ = 0.0;
    std::vector<double> weights_;
    double cap_ = 0.0;
};

// Distance between two points of a numeric domain (feature vectors, or
// scores viewed as 1-d vectors). Throws DimensionMismatch.
double eval_metric(const PseudoMetricSpec& spec, std::span<const double> p,
                   std::span<const double> q);

// Score-space convenience overload.
double eval_metric(const PseudoMetricSpec& spec, double p, double q);

// uid-space distance over uid tokens.
double eval_metric_uid(const PseudoMetricSpec& spec, const std::string& p,
                       const std::string& q);

// Distance between two individuals under spec.domain(): feature vectors for
// feature-space, uid tokens for uid-space (MissingUid when absent).
// Score-space specs do not apply to individuals and are rejected.
double eval_between(const PseudoMetricSpec& spec, const Individual& p, const Individual& q);

struct MetricAxiomViolation {
    std::string axiom;                 // "non-negativity" | "self-distance" | "symmetry" | "triangle"
    std::vector<std::size_t> points;   // witness indices into the sample
    std::vector<double> values;        // the distances involved
};

struct MetricValidationReport {
    bool passed = true;
    std::size_t n_points = 0;
    std::vector<MetricAxiomViolation> violations;
};

// Checks the pseudo-metric axioms (non-negativity, zero self-distance,
// symmetry, triangle inequality) over every pair and every ordered triple of
// sample indices, given an arbitrary distance callable. Identity of
// indiscernibles is deliberately not checked.
MetricValidationReport validate_axioms(
    const std::function<double(std::size_t, std::size_t)>& dist, std::size_t n,
    double slack = 1e-12);

MetricValidationReport validate_pseudometric(const PseudoMetricSpec& spec,
                                             const std::vector<std::vector<double>>& sample,
                                             double slack = 1e-12);

MetricValidationReport validate_pseudometric_uids(const PseudoMetricSpec& spec,
                                                  const std::vector<std::string>& sample,
                                                  double slack = 1e-12);

}  // namespace ifaudit
