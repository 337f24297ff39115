#include "ifaudit/audit.hpp"

#include <algorithm>
#include <cmath>

#include "ifaudit/errors.hpp"

namespace ifaudit {

AuditConfig::AuditConfig(PseudoMetricSpec d, PseudoMetricSpec D, double slack)
    : d(std::move(d)), D(std::move(D)), slack(slack) {
    if (this->d.domain() == MetricDomain::ScoreSpace) {
        throw InvalidSpec("individual metric d must compare features or uids, not scores");
    }
    if (this->D.domain() != MetricDomain::ScoreSpace) {
        throw InvalidSpec("prediction metric D must be score-space");
    }
    if (!std::isfinite(slack) || slack < 0.0) throw InvalidSpec("audit slack must be >= 0");
}

AuditReport audit_if(const ScoredPopulation& sp, const AuditConfig& cfg) {
    AuditReport report;
    report.slack = cfg.slack;
    const auto& people = sp.population().individuals();
    for (std::size_t i = 0; i < people.size(); ++i) {
        for (std::size_t j = i + 1; j < people.size(); ++j) {
            const Individual& p = people[i];
            const Individual& q = people[j];
            const double d = eval_between(cfg.d, p, q);
            const double D = eval_metric(cfg.D, sp.score_of(p.id), sp.score_of(q.id));
            ++report.n_pairs;
            if (D > d + cfg.slack) {
                report.violations.push_back({std::min(p.id, q.id), std::max(p.id, q.id), d, D});
            } else if (D > d) {
                report.max_slack_used = std::max(report.max_slack_used, D - d);
            }
        }
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const AuditViolation& a, const AuditViolation& b) {
                  return std::tie(a.p, a.q) < std::tie(b.p, b.q);
              });
    report.passed = report.violations.empty();
    return report;
}

GroupStats selection_rates(const ScoredPopulation& sp, const Threshold& th) {
    GroupStats stats;
    for (const Individual& ind : sp.population().individuals()) {
        GroupRecord& rec = stats.per_group[ind.group];
        ++rec.count;
        if (th.is_positive(sp.score_of(ind.id))) ++rec.positives;
    }
    for (auto& [group, rec] : stats.per_group) {
        rec.selection_rate = static_cast<double>(rec.positives) / static_cast<double>(rec.count);
    }
    for (auto a = stats.per_group.begin(); a != stats.per_group.end(); ++a) {
        for (auto b = std::next(a); b != stats.per_group.end(); ++b) {
            stats.spd = std::max(stats.spd, std::abs(a->second.selection_rate -
                                                     b->second.selection_rate));
        }
    }
    return stats;
}

ConcentrationRecord interval_concentration(const ScoredPopulation& sp, double lo, double hi,
                                           const std::string& group) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) throw InvalidDomain(lo, hi);
    ConcentrationRecord rec;
    rec.lo = lo;
    rec.hi = hi;
    rec.group = group;
    std::size_t group_total = 0;
    std::size_t group_in_interval = 0;
    const auto& people = sp.population().individuals();
    for (const Individual& ind : people) {
        const bool inside = [&] {
            const double s = sp.score_of(ind.id);
            return lo <= s && s <= hi;
        }();
        if (ind.group == group) ++group_total;
        if (inside) {
            ++rec.interval_total;
            if (ind.group == group) ++group_in_interval;
        }
    }
    rec.base_rate = people.empty()
                        ? 0.0
                        : static_cast<double>(group_total) / static_cast<double>(people.size());
    if (rec.interval_total > 0) {
        rec.fraction_of_interval =
            static_cast<double>(group_in_interval) / static_cast<double>(rec.interval_total);
        if (rec.base_rate > 0.0) {
            rec.overrepresentation_ratio = *rec.fraction_of_interval / rec.base_rate;
        }
    }
    return rec;
}

LeibnizReport leibniz_audit(const DistributionTable& predictor_dists, const LeibnizTable& table) {
    if (predictor_dists.outcomes() != table.outcomes()) throw OutcomeSetMismatch();
    LeibnizReport report;
    for (const auto& [id, expected] : table.rows()) {
        if (!predictor_dists.has_id(id)) throw MissingIndividual(id);
        const std::vector<Rational>& actual = predictor_dists.row(id);
        ++report.checked;
        for (std::size_t k = 0; k < expected.size(); ++k) {
            if (actual[k] != expected[k]) {
                report.mismatches.push_back({id, table.outcomes()[k]});
                break;
            }
        }
    }
    report.passed = report.mismatches.empty();
    return report;
}

}  // namespace ifaudit
