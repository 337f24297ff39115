#pragma once

#include <map>
#include <string>
#include <vector>

#include "ifaudit/rational.hpp"

namespace ifaudit {

// Per-individual exact distributions over a finite, ordered outcome set.
// Outcome label order is semantic: rows are compared position by position.
class DistributionTable {
public:
    // Validates: non-empty outcome set, every row non-negative, row length
    // equal to the outcome count, and every row summing exactly to 1.
    DistributionTable(std::vector<std::string> outcome_labels,
                      std::map<std::string, std::vector<Rational>> rows);

    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::map<std::string, std::vector<Rational>>& rows() const { return rows_; }

    const std::vector<Rational>& row(const std::string& id) const;  // throws UnknownId
    bool has_id(const std::string& id) const { return rows_.count(id) > 0; }

    // Sorted id universe.
    std::vector<std::string> ids() const;

    bool same_universe(const DistributionTable& other) const;

    bool operator==(const DistributionTable&) const = default;

private:
    std::vector<std::string> outcomes_;
    std::map<std::string, std::vector<Rational>> rows_;
};

// Disjoint non-empty id blocks covering an id universe. Stored normalized:
// ids sorted within blocks, blocks sorted by their first id.
class Partition {
public:
    static Partition from_blocks(std::vector<std::vector<std::string>> blocks);
    static Partition singletons(std::vector<std::string> universe);

    const std::vector<std::vector<std::string>>& blocks() const { return blocks_; }
    const std::vector<std::string>& universe() const { return universe_; }

    std::size_t n_blocks() const { return blocks_.size(); }
    std::size_t block_of(const std::string& id) const;  // throws UnknownId

    bool operator==(const Partition&) const = default;

private:
    Partition() = default;

    std::vector<std::vector<std::string>> blocks_;
    std::vector<std::string> universe_;
    std::map<std::string, std::size_t> block_index_;
};

}  // namespace ifaudit
