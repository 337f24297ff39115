#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "ifaudit/aif.hpp"
#include "ifaudit/errors.hpp"
#include "ifaudit/rng.hpp"

using namespace ifaudit;

namespace {

using Rows = std::map<std::string, std::vector<Rational>>;

DistributionTable table2(Rows rows) { return {{"y0", "y1"}, std::move(rows)}; }

const Rational kHalf(1, 2);
const Rational kOne(1);
const Rational kZero(0);

// Random partition of x0..x{n-1} into up to k blocks.
Partition random_partition(std::size_t n, std::size_t k, DetRng& rng) {
    std::vector<std::vector<std::string>> buckets(k);
    for (std::size_t i = 0; i < n; ++i) {
        buckets[rng.index(k)].push_back("x" + std::to_string(i));
    }
    std::vector<std::vector<std::string>> blocks;
    for (auto& b : buckets)
        if (!b.empty()) blocks.push_back(std::move(b));
    return Partition::from_blocks(std::move(blocks));
}

// Merge two blocks of p, yielding a strictly coarser partition when possible.
Partition merge_first_two(const Partition& p) {
    auto blocks = p.blocks();
    if (blocks.size() >= 2) {
        for (const auto& id : blocks[1]) blocks[0].push_back(id);
        blocks.erase(blocks.begin() + 1);
    }
    return Partition::from_blocks(std::move(blocks));
}

}  // namespace

TEST_SUITE("aif") {

TEST_CASE("table construction validates rows") {
    CHECK_THROWS_AS(table2({{"x1", {kHalf, kHalf, kZero}}}), Error);      // wrong length
    CHECK_THROWS_AS(table2({{"x1", {kHalf, Rational(1, 4)}}}), Error);    // sums to 3/4
    CHECK_THROWS_AS(table2({{"x1", {Rational(3, 2), Rational(-1, 2)}}}), Error);  // negative
    CHECK_THROWS_AS(DistributionTable({}, {{"x1", {}}}), Error);          // no outcomes
    CHECK_THROWS_AS(DistributionTable({"y0", "y0"}, {{"x1", {kHalf, kHalf}}}), Error);
    CHECK_NOTHROW(table2({{"x1", {kHalf, kHalf}}}));
}

TEST_CASE("rows are grouped by exact distribution equality") {
    auto part = partition_by_distribution(table2({
        {"x1", {kHalf, kHalf}},
        {"x2", {kHalf, kHalf}},
        {"x3", {kOne, kZero}},
    }));
    CHECK(part.n_blocks() == 2);
    CHECK(part.block_of("x1") == part.block_of("x2"));
    CHECK(part.block_of("x1") != part.block_of("x3"));

    auto one_block = partition_by_distribution(table2({
        {"x1", {kHalf, kHalf}},
        {"x2", {kHalf, kHalf}},
    }));
    CHECK(one_block.n_blocks() == 1);

    auto all_distinct = partition_by_distribution(table2({
        {"x1", {kOne, kZero}},
        {"x2", {kZero, kOne}},
        {"x3", {kHalf, kHalf}},
    }));
    CHECK(all_distinct.n_blocks() == 3);
}

TEST_CASE("equal value multisets in different outcome positions stay distinct") {
    // Outcome label order is load-bearing: [1/3, 2/3] and [2/3, 1/3] are
    // different distributions even though the entries match as a multiset.
    auto part = partition_by_distribution(table2({
        {"x1", {Rational(1, 3), Rational(2, 3)}},
        {"x2", {Rational(2, 3), Rational(1, 3)}},
    }));
    CHECK(part.n_blocks() == 2);

    // Permuting labels together with every row is a pure renaming.
    DistributionTable renamed({"y1", "y0"},
                              {{"x1", {Rational(2, 3), Rational(1, 3)}},
                               {"x2", {Rational(1, 3), Rational(2, 3)}}});
    CHECK(partition_by_distribution(renamed).blocks() == part.blocks());
}

TEST_CASE("unreduced rationals compare equal") {
    auto part = partition_by_distribution(table2({
        {"x1", {make_rational("2", "4"), make_rational("1", "2")}},
        {"x2", {kHalf, kHalf}},
    }));
    CHECK(part.n_blocks() == 1);
}

TEST_CASE("coarsening recognizes refinement and rejects crossing blocks") {
    auto coarse = Partition::from_blocks({{"x1", "x2"}, {"x3"}});
    auto fine = Partition::singletons({"x1", "x2", "x3"});
    CHECK(is_coarsening(coarse, fine));
    CHECK_FALSE(is_coarsening(fine, coarse));
    CHECK(is_coarsening(coarse, coarse));

    auto crossing = Partition::from_blocks({{"x1", "x3"}, {"x2"}});
    CHECK_FALSE(is_coarsening(coarse, crossing));
    CHECK_FALSE(is_coarsening(crossing, coarse));

    auto other_universe = Partition::singletons({"x1", "x2"});
    CHECK_THROWS_AS(is_coarsening(coarse, other_universe), UniverseMismatch);
}

TEST_CASE("coarsening is a partial order on random partitions") {
    DetRng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_partition(8, 1 + rng.index(4), rng);
        auto q = random_partition(8, 1 + rng.index(4), rng);

        CHECK(is_coarsening(p, p));  // reflexive

        if (is_coarsening(p, q) && is_coarsening(q, p)) {  // antisymmetric
            CHECK(p == q);
        }

        auto coarser = merge_first_two(p);
        auto coarsest = merge_first_two(coarser);
        CHECK(is_coarsening(coarser, p));
        CHECK(is_coarsening(coarsest, coarser));
        CHECK(is_coarsening(coarsest, p));  // transitive along the chain
    }
}

TEST_CASE("direct check accepts matched rows and vacuous antecedents") {
    auto f_y = table2({{"x1", {kHalf, kHalf}}, {"x2", {kHalf, kHalf}}});
    auto f_yhat_ok = table2({{"x1", {Rational(1, 3), Rational(2, 3)}},
                             {"x2", {Rational(1, 3), Rational(2, 3)}}});
    auto res = check_aif_direct(f_y, f_yhat_ok);
    CHECK(res.holds);
    CHECK_FALSE(res.witness.has_value());

    // All ground-truth rows distinct: any prediction table is fine.
    auto f_y_distinct = table2({{"x1", {kOne, kZero}}, {"x2", {kZero, kOne}}});
    auto f_yhat_any = table2({{"x1", {kOne, kZero}}, {"x2", {kHalf, kHalf}}});
    CHECK(check_aif_direct(f_y_distinct, f_yhat_any).holds);
}

TEST_CASE("direct check reports the first violating pair") {
    auto f_y = table2({{"x1", {kHalf, kHalf}}, {"x2", {kHalf, kHalf}}});
    auto f_yhat = table2({{"x1", {kOne, kZero}}, {"x2", {kZero, kOne}}});
    auto res = check_aif_direct(f_y, f_yhat);
    CHECK_FALSE(res.holds);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->p == "x1");
    CHECK(res.witness->q == "x2");
}

TEST_CASE("outcome sets of the two tables may differ") {
    auto f_y = table2({{"x1", {kHalf, kHalf}}, {"x2", {kHalf, kHalf}}});
    DistributionTable f_yhat({"reject", "borderline", "accept"},
                             {{"x1", {kHalf, Rational(1, 4), Rational(1, 4)}},
                              {"x2", {kHalf, Rational(1, 4), Rational(1, 4)}}});
    CHECK(check_aif_direct(f_y, f_yhat).holds);
    CHECK(check_aif_via_mss(f_y, f_yhat));
}

TEST_CASE("universe mismatch is rejected on both routes") {
    auto f_y = table2({{"x1", {kHalf, kHalf}}});
    auto f_yhat = table2({{"x9", {kHalf, kHalf}}});
    CHECK_THROWS_AS(check_aif_direct(f_y, f_yhat), UniverseMismatch);
    CHECK_THROWS_AS(check_aif_via_mss(f_y, f_yhat), UniverseMismatch);
}

TEST_CASE("partition route agrees with the direct route on the worked examples") {
    auto f_y = table2({{"x1", {kHalf, kHalf}}, {"x2", {kHalf, kHalf}}, {"x3", {kOne, kZero}}});
    auto good = table2({{"x1", {kZero, kOne}}, {"x2", {kZero, kOne}}, {"x3", {kZero, kOne}}});
    auto bad = table2({{"x1", {kOne, kZero}}, {"x2", {kZero, kOne}}, {"x3", {kHalf, kHalf}}});

    CHECK(check_aif_direct(f_y, good).holds == check_aif_via_mss(f_y, good));
    CHECK(check_aif_direct(f_y, bad).holds == check_aif_via_mss(f_y, bad));
    CHECK(check_aif_via_mss(f_y, good));
    CHECK_FALSE(check_aif_via_mss(f_y, bad));
}

TEST_CASE("routes agree on randomized tables") {
    DetRng rng(41);
    const std::vector<std::vector<Rational>> row_pool = {
        {kOne, kZero}, {kZero, kOne}, {kHalf, kHalf},
        {Rational(1, 4), Rational(3, 4)}, {Rational(3, 4), Rational(1, 4)},
    };
    for (int trial = 0; trial < 300; ++trial) {
        Rows y_rows, yhat_rows;
        for (int i = 0; i < 5; ++i) {
            const std::string id = "x" + std::to_string(i);
            y_rows[id] = row_pool[rng.index(row_pool.size())];
            yhat_rows[id] = row_pool[rng.index(row_pool.size())];
        }
        auto f_y = table2(std::move(y_rows));
        auto f_yhat = table2(std::move(yhat_rows));
        CHECK(check_aif_direct(f_y, f_yhat).holds == check_aif_via_mss(f_y, f_yhat));
    }
}

TEST_CASE("a constant prediction table satisfies AIF against any ground truth") {
    DetRng rng(43);
    const std::vector<std::vector<Rational>> row_pool = {
        {kOne, kZero}, {kZero, kOne}, {kHalf, kHalf}};
    for (int trial = 0; trial < 50; ++trial) {
        Rows y_rows, const_rows;
        for (int i = 0; i < 6; ++i) {
            const std::string id = "x" + std::to_string(i);
            y_rows[id] = row_pool[rng.index(row_pool.size())];
            const_rows[id] = {kHalf, kHalf};
        }
        CHECK(check_aif_direct(table2(std::move(y_rows)), table2(std::move(const_rows))).holds);
    }
}

TEST_CASE("partition normalization and lookups") {
    auto p = Partition::from_blocks({{"x3", "x1"}, {"x2"}});
    // Ids sort inside blocks; blocks sort by first id.
    CHECK(p.blocks() == std::vector<std::vector<std::string>>{{"x1", "x3"}, {"x2"}});
    CHECK(p.universe() == std::vector<std::string>{"x1", "x2", "x3"});
    CHECK(p.block_of("x3") == 0);
    CHECK(p.block_of("x2") == 1);
    CHECK_THROWS_AS(p.block_of("x4"), UnknownId);
    CHECK_THROWS_AS(Partition::from_blocks({{"x1"}, {"x1"}}), Error);
    CHECK_THROWS_AS(Partition::from_blocks({{}}), Error);
}

TEST_CASE("table accessors") {
    auto t = table2({{"x2", {kHalf, kHalf}}, {"x1", {kOne, kZero}}});
    CHECK(t.ids() == std::vector<std::string>{"x1", "x2"});
    CHECK(t.has_id("x1"));
    CHECK_FALSE(t.has_id("x3"));
    CHECK(t.row("x1") == std::vector<Rational>{kOne, kZero});
    CHECK_THROWS_AS(t.row("x3"), UnknownId);
    CHECK(t.same_universe(table2({{"x1", {kHalf, kHalf}}, {"x2", {kHalf, kHalf}}})));
    CHECK_FALSE(t.same_universe(table2({{"x1", {kHalf, kHalf}}})));
}

}  // TEST_SUITE
