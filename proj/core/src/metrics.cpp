#include "ifaudit/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace ifaudit {

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::Trivial: return "trivial";
        case MetricKind::Discrete: return "discrete";
        case MetricKind::Euclidean: return "euclidean";
        case MetricKind::WeightedLp: return "weighted_lp";
        case MetricKind::CappedEuclidean: return "capped_euclidean";
    }
    return "?";
}

std::string to_string(MetricDomain domain) {
    switch (domain) {
        case MetricDomain::FeatureSpace: return "feature-space";
        case MetricDomain::ScoreSpace: return "score-space";
        case MetricDomain::UidSpace: return "uid-space";
    }
    return "?";
}

namespace {

void require_uid_compatible(MetricKind kind, MetricDomain domain) {
    if (domain == MetricDomain::UidSpace && kind != MetricKind::Trivial &&
        kind != MetricKind::Discrete) {
        throw InvalidSpec("only trivial and discrete metrics apply to uid-space");
    }
}

}  // namespace

PseudoMetricSpec PseudoMetricSpec::trivial(MetricDomain domain) {
    return PseudoMetricSpec(MetricKind::Trivial, domain);
}

PseudoMetricSpec PseudoMetricSpec::discrete(MetricDomain domain) {
    return PseudoMetricSpec(MetricKind::Discrete, domain);
}

PseudoMetricSpec PseudoMetricSpec::euclidean(MetricDomain domain) {
    require_uid_compatible(MetricKind::Euclidean, domain);
    return PseudoMetricSpec(MetricKind::Euclidean, domain);
}

PseudoMetricSpec PseudoMetricSpec::weighted_lp(double exponent, std::vector<double> weights,
                                               MetricDomain domain) {
    require_uid_compatible(MetricKind::WeightedLp, domain);
    if (!std::isfinite(exponent) || exponent < 1.0) {
        throw InvalidSpec("weighted_lp exponent must be finite and >= 1");
    }
    if (weights.empty()) throw InvalidSpec("weighted_lp weights must be non-empty");
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw InvalidSpec("weighted_lp weights must be finite and non-negative");
        }
    }
    PseudoMetricSpec spec(MetricKind::WeightedLp, domain);
    spec.exponent_ = exponent;
    spec.weights_ = std::move(weights);
    return spec;
}

PseudoMetricSpec PseudoMetricSpec::capped_euclidean(double cap, MetricDomain domain) {
    require_uid_compatible(MetricKind::CappedEuclidean, domain);
    if (!std::isfinite(cap) || cap <= 0.0) {
        throw InvalidSpec("capped_euclidean cap must be finite and > 0");
    }
    PseudoMetricSpec spec(MetricKind::CappedEuclidean, domain);
    spec.cap_ = cap;
    return spec;
}

namespace {

// Equality of individuals with feature points is by bitwise vector equality.
bool bitwise_equal(std::span<const double> p, std::span<const double> q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (std::bit_cast<std::uint64_t>(p[i]) != std::bit_cast<std::uint64_t>(q[i])) {
            return false;
        }
    }
    return true;
}

double euclidean_dist(std::span<const double> p, std::span<const double> q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double diff = p[i] - q[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

}  // namespace

double eval_metric(const PseudoMetricSpec& spec, std::span<const double> p,
                   std::span<const double> q) {
    if (p.size() != q.size()) throw DimensionMismatch(p.size(), q.size());
    switch (spec.kind()) {
        case MetricKind::Trivial:
            return 0.0;
        case MetricKind::Discrete:
            return bitwise_equal(p, q) ? 0.0 : 1.0;
        case MetricKind::Euclidean:
            return euclidean_dist(p, q);
        case MetricKind::WeightedLp: {
            const auto& w = spec.weights();
            if (w.size() != p.size()) throw DimensionMismatch(w.size(), p.size());
            double sum = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                sum += w[i] * std::pow(std::abs(p[i] - q[i]), spec.exponent());
            }
            return std::pow(sum, 1.0 / spec.exponent());
        }
        case MetricKind::CappedEuclidean:
            return std::min(euclidean_dist(p, q), spec.cap());
    }
    throw Error("unreachable metric kind");
}

double eval_metric(const PseudoMetricSpec& spec, double p, double q) {
    return eval_metric(spec, std::span<const double>(&p, 1), std::span<const double>(&q, 1));
}

double eval_metric_uid(const PseudoMetricSpec& spec, const std::string& p, const std::string& q) {
    switch (spec.kind()) {
        case MetricKind::Trivial:
            return 0.0;
        case MetricKind::Discrete:
            return p == q ? 0.0 : 1.0;
        default:
            throw InvalidSpec("metric kind '" + to_string(spec.kind()) +
                              "' does not apply to uid tokens");
    }
}

double eval_between(const PseudoMetricSpec& spec, const Individual& p, const Individual& q) {
    switch (spec.domain()) {
        case MetricDomain::FeatureSpace:
            return eval_metric(spec, std::span<const double>(p.features),
                               std::span<const double>(q.features));
        case MetricDomain::UidSpace:
            if (!p.uid) throw MissingUid(p.id);
            if (!q.uid) throw MissingUid(q.id);
            return eval_metric_uid(spec, *p.uid, *q.uid);
        case MetricDomain::ScoreSpace:
            throw InvalidSpec("score-space metrics do not apply to individuals");
    }
    throw Error("unreachable metric domain");
}

MetricValidationReport validate_axioms(const std::function<double(std::size_t, std::size_t)>& dist,
                                       std::size_t n, double slack) {
    MetricValidationReport report;
    report.n_points = n;

    // Cache the full matrix; samples are small by contract.
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = dist(i, j);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!(std::abs(m[i][i]) <= slack)) {
            report.violations.push_back({"self-distance", {i}, {m[i][i]}});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j] < 0.0 || !std::isfinite(m[i][j])) {
                report.violations.push_back({"non-negativity", {i, j}, {m[i][j]}});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(std::abs(m[i][j] - m[j][i]) <= slack)) {
                report.violations.push_back({"symmetry", {i, j}, {m[i][j], m[j][i]}});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (m[i][k] > m[i][j] + m[j][k] + slack) {
                    report.violations.push_back(
                        {"triangle", {i, j, k}, {m[i][k], m[i][j], m[j][k]}});
                }
            }
        }
    }

    report.passed = report.violations.empty();
    return report;
}

MetricValidationReport validate_pseudometric(const PseudoMetricSpec& spec,
                                             const std::vector<std::vector<double>>& sample,
                                             double slack) {
    if (sample.empty()) throw Error("validation sample must be non-empty");
    return validate_axioms(
        [&](std::size_t i, std::size_t j) {
            return eval_metric(spec, std::span<const double>(sample[i]),
                               std::span<const double>(sample[j]));
        },
        sample.size(), slack);
}

MetricValidationReport validate_pseudometric_uids(const PseudoMetricSpec& spec,
                                                  const std::vector<std::string>& sample,
                                                  double slack) {
    if (sample.empty()) throw Error("validation sample must be non-empty");
    return validate_axioms(
        [&](std::size_t i, std::size_t j) { return eval_metric_uid(spec, sample[i], sample[j]); },
        sample.size(), slack);
}

}  // namespace ifaudit
