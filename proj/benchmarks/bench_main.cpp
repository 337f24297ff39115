#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ifaudit/aif.hpp"
#include "ifaudit/audit.hpp"
#include "ifaudit/search.hpp"
#include "ifaudit/synth.hpp"
#include "ifaudit/transforms.hpp"

namespace {

using namespace ifaudit;

ScoredPopulation make_population(std::size_t n_per_group, std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.groups = {
        {"A", n_per_group, ScoreDistribution(UniformDist{3.0, 4.0}), std::nullopt},
        {"B", n_per_group, ScoreDistribution(UniformDist{0.0, 10.0}), std::nullopt},
    };
    cfg.feature_dim = 2;
    cfg.seed = seed;
    return generate(cfg);
}

void BM_AuditIf(benchmark::State& state) {
    const auto sp = make_population(static_cast<std::size_t>(state.range(0)) / 2, 11);
    const AuditConfig cfg(PseudoMetricSpec::euclidean(MetricDomain::FeatureSpace),
                          PseudoMetricSpec::euclidean());
    for (auto _ : state) {
        benchmark::DoNotOptimize(audit_if(sp, cfg));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AuditIf)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNSquared);

void BM_ApplyFolding(benchmark::State& state) {
    const ScoreTransform phi{Folding(2.0, 5.0)};
    std::vector<double> ys;
    ys.reserve(1000);
    for (int i = 0; i < 1000; ++i) ys.push_back(-10.0 + 0.02 * i);
    for (auto _ : state) {
        double acc = 0.0;
        for (double y : ys) acc += apply_transform(phi, y);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 1000);
}
BENCHMARK(BM_ApplyFolding);

void BM_CheckNonexpansive(benchmark::State& state) {
    const ScoreTransform phi{Folding(-1.0, 4.0)};
    const auto n_pairs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_nonexpansive(phi, -100.0, 100.0, n_pairs, 42));
    }
}
BENCHMARK(BM_CheckNonexpansive)->Arg(1000)->Arg(10000);

void BM_PartitionByDistribution(benchmark::State& state) {
    const std::vector<std::string> outcomes = {"y0", "y1", "y2"};
    const std::vector<std::vector<Rational>> patterns = {
        {Rational(1), Rational(0), Rational(0)},
        {Rational(0), Rational(1), Rational(0)},
        {Rational(1, 2), Rational(1, 2), Rational(0)},
        {Rational(1, 3), Rational(1, 3), Rational(1, 3)},
        {Rational(1, 4), Rational(1, 4), Rational(1, 2)},
    };
    std::map<std::string, std::vector<Rational>> rows;
    for (int i = 0; i < 500; ++i) {
        char id[16];
        std::snprintf(id, sizeof(id), "x%04d", i);
        rows[id] = patterns[static_cast<std::size_t>(i) % patterns.size()];
    }
    const DistributionTable table(outcomes, rows);
    for (auto _ : state) {
        benchmark::DoNotOptimize(partition_by_distribution(table));
    }
}
BENCHMARK(BM_PartitionByDistribution);

void BM_SearchAttack(benchmark::State& state) {
    const auto sp = generate_preset("threshold_push", 7);
    const UtilitySpec u(Threshold(3.0), {{"A", -1.0}, {"B", 1.0}});
    const std::vector<TransformFamily> families = {TransformFamily::Translate,
                                                   TransformFamily::Fold};
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_attack(sp, u, families, 8));
    }
}
BENCHMARK(BM_SearchAttack);

}  // namespace

BENCHMARK_MAIN();
