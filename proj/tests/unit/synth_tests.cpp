#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "ifaudit/audit.hpp"
#include "ifaudit/synth.hpp"

using namespace ifaudit;

namespace {

ScenarioConfig two_group_config(std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.groups = {
        {"A", 40, ScoreDistribution(UniformDist{3.0, 4.0}), std::nullopt},
        {"B", 60, ScoreDistribution(UniformDist{0.0, 5.0}), std::nullopt},
    };
    cfg.seed = seed;
    return cfg;
}

std::vector<double> group_scores(const ScoredPopulation& sp, const std::string& group) {
    std::vector<double> out;
    for (const auto& ind : sp.population().individuals()) {
        if (ind.group == group) out.push_back(sp.score_of(ind.id));
    }
    return out;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("group sizes and supports are exact") {
    auto sp = generate(two_group_config(7));
    CHECK(sp.population().size() == 100);
    auto a = group_scores(sp, "A");
    auto b = group_scores(sp, "B");
    CHECK(a.size() == 40);
    CHECK(b.size() == 60);
    for (double s : a) CHECK((3.0 <= s && s < 4.0));
    for (double s : b) CHECK((0.0 <= s && s < 5.0));
}

TEST_CASE("generation is deterministic under the seed") {
    auto sp1 = generate(two_group_config(7));
    auto sp2 = generate(two_group_config(7));
    CHECK(sp1 == sp2);

    auto other = generate(two_group_config(8));
    CHECK_FALSE(sp1 == other);
}

TEST_CASE("point mass pins every score") {
    ScenarioConfig cfg;
    cfg.groups = {{"A", 10, ScoreDistribution(PointMass{2.5}), std::nullopt}};
    cfg.seed = 1;
    auto sp = generate(cfg);
    for (double s : sp.scores_in_order()) CHECK(s == 2.5);
}

TEST_CASE("mixture weights normalize and samples stay in the union of supports") {
    MixtureDist mix{{
        {1.0, ScoreDistribution(UniformDist{0.0, 1.0})},
        {3.0, ScoreDistribution(PointMass{5.0})},
    }};
    ScoreDistribution dist(mix);
    const auto& components = std::get<MixtureDist>(dist.value()).components;
    CHECK(components[0].weight == doctest::Approx(0.25));
    CHECK(components[1].weight == doctest::Approx(0.75));

    DetRng rng(3);
    int at_five = 0;
    for (int i = 0; i < 1000; ++i) {
        const double s = dist.sample(rng);
        const bool in_uniform = 0.0 <= s && s < 1.0;
        const bool is_point = s == 5.0;
        CHECK((in_uniform || is_point));
        at_five += is_point;
    }
    // Expect roughly three quarters of draws from the point mass.
    CHECK(at_five > 600);
    CHECK(at_five < 900);
}

TEST_CASE("normal scores are finite and centered roughly at the mean") {
    ScenarioConfig cfg;
    cfg.groups = {{"A", 500, ScoreDistribution(NormalDist{10.0, 2.0}), std::nullopt}};
    cfg.seed = 5;
    auto sp = generate(cfg);
    double sum = 0.0;
    for (double s : sp.scores_in_order()) sum += s;
    CHECK(sum / 500.0 == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("features and uids are generated on demand") {
    ScenarioConfig cfg = two_group_config(2);
    cfg.feature_dim = 3;
    cfg.assign_uids = true;
    auto sp = generate(cfg);
    CHECK(sp.population().feature_dim() == 3);
    std::set<std::string> uids;
    for (const auto& ind : sp.population().individuals()) {
        REQUIRE(ind.features.size() == 3);
        for (double f : ind.features) CHECK((0.0 <= f && f < 1.0));
        REQUIRE(ind.uid.has_value());
        uids.insert(*ind.uid);
    }
    CHECK(uids.size() == sp.population().size());
    CHECK(sp.population().individuals().front().id == "i0000");
    CHECK(sp.population().individuals().front().uid == "u0000");
}

TEST_CASE("invalid configs are rejected") {
    CHECK_THROWS_AS(ScoreDistribution(UniformDist{4.0, 3.0}), InvalidConfig);
    CHECK_THROWS_AS(ScoreDistribution(NormalDist{0.0, 0.0}), InvalidConfig);
    CHECK_THROWS_AS(ScoreDistribution(MixtureDist{{}}), InvalidConfig);
    CHECK_THROWS_AS(
        ScoreDistribution(MixtureDist{{{0.0, ScoreDistribution(PointMass{1.0})}}}),
        InvalidConfig);

    ScenarioConfig no_groups;
    no_groups.seed = 1;
    CHECK_THROWS_AS(generate(no_groups), InvalidConfig);

    ScenarioConfig duplicate = two_group_config(1);
    duplicate.groups[1].label = "A";
    CHECK_THROWS_AS(generate(duplicate), InvalidConfig);

    ScenarioConfig wrong_rng = two_group_config(1);
    wrong_rng.rng = "lcg/v0";
    CHECK_THROWS_AS(generate(wrong_rng), InvalidConfig);
}

TEST_CASE("groups sharing a stream key draw identical score sequences") {
    ScenarioConfig cfg;
    cfg.groups = {
        {"A", 20, ScoreDistribution(UniformDist{0.0, 10.0}), 0},
        {"B", 20, ScoreDistribution(UniformDist{0.0, 10.0}), 0},
    };
    cfg.seed = 9;
    auto sp = generate(cfg);
    CHECK(group_scores(sp, "A") == group_scores(sp, "B"));
}

TEST_CASE("threshold_push concentrates A above the threshold") {
    auto sp = generate_preset("threshold_push", 7);
    CHECK(sp.population().size() == 100);
    auto rec = interval_concentration(sp, 3.0, 4.0, "A");
    REQUIRE(rec.overrepresentation_ratio.has_value());
    CHECK(*rec.overrepresentation_ratio >= 1.5);
    for (double s : group_scores(sp, "A")) CHECK((3.0 <= s && s < 4.0));
}

TEST_CASE("fold_target concentrates A in the interior interval") {
    auto sp = generate_preset("fold_target", 11);
    auto rec = interval_concentration(sp, 4.0, 6.0, "A");
    REQUIRE(rec.overrepresentation_ratio.has_value());
    CHECK(*rec.overrepresentation_ratio >= 1.5);
}

TEST_CASE("mirror_symmetric yields identical score multisets") {
    auto sp = generate_preset("mirror_symmetric", 4);
    auto a = group_scores(sp, "A");
    auto b = group_scores(sp, "B");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
}

TEST_CASE("unique_id_vacuity assigns distinct uids to everyone") {
    auto sp = generate_preset("unique_id_vacuity", 21);
    std::set<std::string> uids;
    for (const auto& ind : sp.population().individuals()) {
        REQUIRE(ind.uid.has_value());
        uids.insert(*ind.uid);
    }
    CHECK(uids.size() == 50);
}

TEST_CASE("preset regeneration offset is reported and reproducible") {
    const auto offset = preset_seed_used("threshold_push", 7);
    auto direct = generate_preset("threshold_push", 7);
    ScenarioConfig cfg = scenario_preset("threshold_push", 7).config;
    cfg.seed = 7 + offset;
    CHECK(generate(cfg) == direct);

    CHECK_THROWS_AS(scenario_preset("no_such_scenario", 1), UnknownPreset);
    CHECK_THROWS_AS(generate_preset("no_such_scenario", 1), UnknownPreset);
}

}  // TEST_SUITE
