#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "ifaudit/audit.hpp"
#include "ifaudit/rng.hpp"
#include "ifaudit/transforms.hpp"

using namespace ifaudit;

namespace {

Population two_groups() {
    // Group A: a1, a2. Group B: b1..b4. One feature each.
    return Population({
        {"a1", "A", {1.0}, std::nullopt},
        {"a2", "A", {3.0}, std::nullopt},
        {"b1", "B", {3.0}, std::nullopt},
        {"b2", "B", {4.0}, std::nullopt},
        {"b3", "B", {5.0}, std::nullopt},
        {"b4", "B", {1.0}, std::nullopt},
    });
}

ScoredPopulation scores_equal_features(const Population& pop) {
    std::map<std::string, double> scores;
    for (const auto& ind : pop.individuals()) scores[ind.id] = ind.features[0];
    return {pop, scores};
}

AuditConfig feature_euclid_config(double slack = 1e-12) {
    return {PseudoMetricSpec::euclidean(MetricDomain::FeatureSpace),
            PseudoMetricSpec::euclidean(), slack};
}

}  // namespace

TEST_SUITE("audit") {

TEST_CASE("config rejects metrics on the wrong side") {
    CHECK_THROWS_AS(AuditConfig(PseudoMetricSpec::euclidean(),  // score-space d
                                PseudoMetricSpec::euclidean()),
                    InvalidSpec);
    CHECK_THROWS_AS(AuditConfig(PseudoMetricSpec::trivial(),
                                PseudoMetricSpec::euclidean(MetricDomain::FeatureSpace)),
                    InvalidSpec);
    CHECK_THROWS_AS(AuditConfig(PseudoMetricSpec::trivial(), PseudoMetricSpec::euclidean(), -1.0),
                    InvalidSpec);
}

TEST_CASE("scores that mirror feature distances pass") {
    auto sp = scores_equal_features(two_groups());
    auto report = audit_if(sp, feature_euclid_config());
    CHECK(report.passed);
    CHECK(report.n_pairs == 15);  // C(6,2)
    CHECK(report.violations.empty());
}

TEST_CASE("constant scores pass under any metric pair") {
    auto pop = two_groups();
    std::map<std::string, double> flat;
    for (const auto& ind : pop.individuals()) flat[ind.id] = 0.7;
    ScoredPopulation sp(pop, flat);

    for (const auto& d : {PseudoMetricSpec::trivial(), PseudoMetricSpec::discrete(),
                          PseudoMetricSpec::euclidean(MetricDomain::FeatureSpace)}) {
        for (const auto& D :
             {PseudoMetricSpec::euclidean(), PseudoMetricSpec::capped_euclidean(1.0)}) {
            CHECK(audit_if(sp, AuditConfig(d, D)).passed);
        }
    }
}

TEST_CASE("trivial d flags every distinct score pair") {
    Population pop({{"p1", "A", {0.0}, std::nullopt}, {"p2", "A", {0.0}, std::nullopt}});
    ScoredPopulation sp(pop, {{"p1", 0.0}, {"p2", 1.0}});
    auto report = audit_if(sp, AuditConfig(PseudoMetricSpec::trivial(),
                                           PseudoMetricSpec::euclidean()));
    CHECK_FALSE(report.passed);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].p == "p1");
    CHECK(report.violations[0].q == "p2");
    CHECK(report.violations[0].d_value == 0.0);
    CHECK(report.violations[0].D_value == 1.0);
}

TEST_CASE("distinct uids with a bounded D make any scores pass") {
    std::vector<Individual> people;
    DetRng rng(5);
    std::map<std::string, double> scores;
    for (int i = 0; i < 30; ++i) {
        const std::string id = "p" + std::to_string(i);
        people.push_back({id, i % 2 ? "A" : "B", {}, "u" + std::to_string(i)});
        scores[id] = rng.uniform(-100.0, 100.0);
    }
    ScoredPopulation sp(Population(std::move(people)), scores);
    AuditConfig cfg(PseudoMetricSpec::discrete(MetricDomain::UidSpace),
                    PseudoMetricSpec::capped_euclidean(1.0));
    CHECK(audit_if(sp, cfg).passed);
}

TEST_CASE("uid-space d demands uids") {
    Population pop({{"p1", "A", {0.0}, "u1"}, {"p2", "A", {0.0}, std::nullopt}});
    ScoredPopulation sp(pop, {{"p1", 0.0}, {"p2", 0.0}});
    AuditConfig cfg(PseudoMetricSpec::discrete(MetricDomain::UidSpace),
                    PseudoMetricSpec::euclidean());
    CHECK_THROWS_AS(audit_if(sp, cfg), MissingUid);
}

TEST_CASE("report is independent of individual order") {
    auto pop = two_groups();
    auto reversed_inds = pop.individuals();
    std::reverse(reversed_inds.begin(), reversed_inds.end());
    Population reversed(reversed_inds);

    std::map<std::string, double> scores;
    DetRng rng(17);
    for (const auto& ind : pop.individuals()) scores[ind.id] = rng.uniform(0.0, 10.0);

    auto cfg = AuditConfig(PseudoMetricSpec::trivial(), PseudoMetricSpec::euclidean());
    auto r1 = audit_if(ScoredPopulation(pop, scores), cfg);
    auto r2 = audit_if(ScoredPopulation(reversed, scores), cfg);
    CHECK(r1.passed == r2.passed);
    CHECK(r1.n_pairs == r2.n_pairs);
    CHECK(r1.violations == r2.violations);
}

TEST_CASE("non-expansive transforms preserve a passing audit") {
    auto sp = scores_equal_features(two_groups());
    auto cfg = feature_euclid_config();
    REQUIRE(audit_if(sp, cfg).passed);

    const std::vector<ScoreTransform> phis = {
        ScoreTransform{Translation(-2.5)},
        ScoreTransform{Reflection(3.0)},
        ScoreTransform{Contraction(0.25, 2.0)},
        ScoreTransform{ConstantCollapse(1.0)},
        ScoreTransform{LocalContraction(2.0, 4.0, 3.0)},
        ScoreTransform{Folding(2.0, 4.0)},
        ScoreTransform{Composition({ScoreTransform{Folding(1.0, 2.0)},
                                    ScoreTransform{Translation(1.0)}})},
    };
    for (const auto& phi : phis) {
        CHECK(audit_if(apply_to_scored(phi, sp), cfg).passed);
    }
}

TEST_CASE("max_slack_used tracks the worst passing excess") {
    Population pop({{"p1", "A", {0.0}, std::nullopt}, {"p2", "A", {1.0}, std::nullopt}});
    // D = 1.0 + 5e-13 while d = 1.0: inside slack, report must pass and expose the excess.
    ScoredPopulation sp(pop, {{"p1", 0.0}, {"p2", 1.0 + 5e-13}});
    auto report = audit_if(sp, feature_euclid_config());
    CHECK(report.passed);
    CHECK(report.max_slack_used > 0.0);
    CHECK(report.max_slack_used <= 1e-12);
}

TEST_CASE("selection rates and spd") {
    ScoredPopulation sp(two_groups(),
                        {{"a1", 1.0}, {"a2", 3.0}, {"b1", 3.0}, {"b2", 4.0}, {"b3", 5.0},
                         {"b4", 1.0}});
    auto stats = selection_rates(sp, Threshold(2.0));
    CHECK(stats.per_group.at("A").count == 2);
    CHECK(stats.per_group.at("A").positives == 1);
    CHECK(stats.per_group.at("A").selection_rate == 0.5);
    CHECK(stats.per_group.at("B").selection_rate == 0.75);
    CHECK(stats.spd == doctest::Approx(0.25));
}

TEST_CASE("all-negative population has zero rates and zero spd") {
    ScoredPopulation sp(two_groups(),
                        {{"a1", 0.0}, {"a2", 0.5}, {"b1", 0.1}, {"b2", 0.2}, {"b3", 0.3},
                         {"b4", 0.4}});
    auto stats = selection_rates(sp, Threshold(2.0));
    for (const auto& [g, rec] : stats.per_group) {
        CAPTURE(g);
        CHECK(rec.positives == 0);
        CHECK(rec.selection_rate == 0.0);
    }
    CHECK(stats.spd == 0.0);
}

TEST_CASE("reflection about the threshold keeps t positive and flips t+1") {
    const double t = 2.0;
    Population pop({{"at", "A", {0.0}, std::nullopt}, {"above", "A", {0.0}, std::nullopt}});
    ScoredPopulation sp(pop, {{"at", t}, {"above", t + 1.0}});
    auto out = apply_to_scored(ScoreTransform{Reflection(t)}, sp);
    Threshold th(t);
    CHECK(out.score_of("at") == t);
    CHECK(th.is_positive(out.score_of("at")));
    CHECK(out.score_of("above") == t - 1.0);
    CHECK_FALSE(th.is_positive(out.score_of("above")));
}

TEST_CASE("interval occupancy and overrepresentation") {
    // 4 of A and 1 of B sit in [10, 20]; A is half the population.
    Population pop({
        {"a1", "A", {}, std::nullopt},
        {"a2", "A", {}, std::nullopt},
        {"a3", "A", {}, std::nullopt},
        {"a4", "A", {}, std::nullopt},
        {"b1", "B", {}, std::nullopt},
        {"b2", "B", {}, std::nullopt},
        {"b3", "B", {}, std::nullopt},
        {"b4", "B", {}, std::nullopt},
    });
    ScoredPopulation sp(pop, {{"a1", 11.0}, {"a2", 12.0}, {"a3", 15.0}, {"a4", 20.0},
                              {"b1", 13.0}, {"b2", 0.0}, {"b3", 25.0}, {"b4", 30.0}});
    auto rec = interval_concentration(sp, 10.0, 20.0, "A");
    CHECK(rec.interval_total == 5);
    REQUIRE(rec.fraction_of_interval.has_value());
    CHECK(*rec.fraction_of_interval == doctest::Approx(0.8));
    CHECK(rec.base_rate == doctest::Approx(0.5));
    REQUIRE(rec.overrepresentation_ratio.has_value());
    CHECK(*rec.overrepresentation_ratio == doctest::Approx(1.6));

    auto empty = interval_concentration(sp, 100.0, 200.0, "A");
    CHECK(empty.interval_total == 0);
    CHECK_FALSE(empty.fraction_of_interval.has_value());
    CHECK_FALSE(empty.overrepresentation_ratio.has_value());

    auto pure = interval_concentration(sp, 10.0, 12.5, "A");
    REQUIRE(pure.fraction_of_interval.has_value());
    CHECK(*pure.fraction_of_interval == 1.0);

    CHECK_THROWS_AS(interval_concentration(sp, 5.0, 1.0, "A"), InvalidDomain);
}

TEST_CASE("collapse output has zero spd at every threshold") {
    ScoredPopulation sp = scores_equal_features(two_groups());
    auto out = apply_to_scored(ScoreTransform{ConstantCollapse(2.0)}, sp);
    for (double t : {-1.0, 0.0, 2.0, 3.0, 10.0}) {
        CHECK(selection_rates(out, Threshold(t)).spd == 0.0);
        CHECK(selection_rates(out, Threshold(t, Direction::Below)).spd == 0.0);
    }
}

TEST_CASE("matching distribution tables satisfy the rigidity audit") {
    DistributionTable table({"y0", "y1"},
                            {{"x1", {Rational(1, 2), Rational(1, 2)}},
                             {"x2", {Rational(1), Rational(0)}}});
    auto report = leibniz_audit(table, table);
    CHECK(report.passed);
    CHECK(report.checked == 2);
}

TEST_CASE("a single perturbed entry fails with that id as witness") {
    DistributionTable expected({"y0", "y1"},
                               {{"x1", {Rational(1, 2), Rational(1, 2)}},
                                {"x2", {Rational(1), Rational(0)}}});
    DistributionTable actual({"y0", "y1"},
                             {{"x1", {Rational(1, 2), Rational(1, 2)}},
                              {"x2", {Rational(3, 4), Rational(1, 4)}}});
    auto report = leibniz_audit(actual, expected);
    CHECK_FALSE(report.passed);
    REQUIRE(report.mismatches.size() == 1);
    CHECK(report.mismatches[0].id == "x2");
    CHECK(report.mismatches[0].outcome == "y0");  // first differing label
}

TEST_CASE("rigidity audit contract errors") {
    DistributionTable table({"y0", "y1"}, {{"x1", {Rational(1), Rational(0)}}});
    DistributionTable other_outcomes({"z0", "z1"}, {{"x1", {Rational(1), Rational(0)}}});
    CHECK_THROWS_AS(leibniz_audit(other_outcomes, table), OutcomeSetMismatch);

    DistributionTable bigger({"y0", "y1"},
                             {{"x1", {Rational(1), Rational(0)}},
                              {"x2", {Rational(0), Rational(1)}}});
    // Extra predictor ids are fine; a missing one is not.
    CHECK(leibniz_audit(bigger, table).passed);
    CHECK_THROWS_AS(leibniz_audit(table, bigger), MissingIndividual);
}

}  // TEST_SUITE
