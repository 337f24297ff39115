#include "ifaudit/distribution.hpp"

#include <algorithm>
#include <cctype>

#include "ifaudit/errors.hpp"

namespace ifaudit {

namespace {

bool is_decimal_integer(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational make_rational(const std::string& numerator, const std::string& denominator) {
    if (!is_decimal_integer(numerator) || !is_decimal_integer(denominator)) {
        throw InvalidSpec("rational parts must be decimal integers, got \"" + numerator + "\"/\"" +
                          denominator + "\"");
    }
    const BigInt num(numerator);
    const BigInt den(denominator);
    if (den == 0) throw InvalidSpec("rational denominator must be non-zero");
    return Rational(num, den);
}

std::pair<std::string, std::string> rational_parts(const Rational& r) {
    return {numerator(r).str(), denominator(r).str()};
}

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

DistributionTable::DistributionTable(std::vector<std::string> outcome_labels,
                                     std::map<std::string, std::vector<Rational>> rows)
    : outcomes_(std::move(outcome_labels)), rows_(std::move(rows)) {
    if (outcomes_.empty()) throw InvalidSpec("distribution table needs at least one outcome");
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        for (std::size_t j = i + 1; j < outcomes_.size(); ++j) {
            if (outcomes_[i] == outcomes_[j]) {
                throw InvalidSpec("duplicate outcome label \"" + outcomes_[i] + "\"");
            }
        }
    }
    for (const auto& [id, row] : rows_) {
        if (id.empty()) throw InvalidSpec("distribution table row with empty id");
        if (row.size() != outcomes_.size()) {
            throw InvalidSpec("row \"" + id + "\" has " + std::to_string(row.size()) +
                              " entries, expected " + std::to_string(outcomes_.size()));
        }
        Rational sum = 0;
        for (const Rational& p : row) {
            if (p < 0) throw InvalidSpec("row \"" + id + "\" has a negative probability");
            sum += p;
        }
        if (sum != 1) {
            throw InvalidSpec("row \"" + id + "\" sums to " + rational_to_string(sum) +
                              ", expected 1");
        }
    }
}

const std::vector<Rational>& DistributionTable::row(const std::string& id) const {
    auto it = rows_.find(id);
    if (it == rows_.end()) throw UnknownId(id);
    return it->second;
}

std::vector<std::string> DistributionTable::ids() const {
    std::vector<std::string> out;
    out.reserve(rows_.size());
    for (const auto& [id, row] : rows_) out.push_back(id);
    return out;  // map iteration is already sorted
}

bool DistributionTable::same_universe(const DistributionTable& other) const {
    if (rows_.size() != other.rows_.size()) return false;
    auto a = rows_.begin();
    auto b = other.rows_.begin();
    for (; a != rows_.end(); ++a, ++b) {
        if (a->first != b->first) return false;
    }
    return true;
}

Partition Partition::from_blocks(std::vector<std::vector<std::string>> blocks) {
    Partition p;
    for (auto& block : blocks) {
        if (block.empty()) throw InvalidSpec("partition block must be non-empty");
        std::sort(block.begin(), block.end());
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (const std::string& id : blocks[i]) {
            if (id.empty()) throw InvalidSpec("partition id must be non-empty");
            if (!p.block_index_.emplace(id, i).second) {
                throw InvalidSpec("id \"" + id + "\" appears in two partition blocks");
            }
            p.universe_.push_back(id);
        }
    }
    p.blocks_ = std::move(blocks);
    std::sort(p.universe_.begin(), p.universe_.end());
    return p;
}

Partition Partition::singletons(std::vector<std::string> universe) {
    std::vector<std::vector<std::string>> blocks;
    blocks.reserve(universe.size());
    for (auto& id : universe) blocks.push_back({std::move(id)});
    return from_blocks(std::move(blocks));
}

std::size_t Partition::block_of(const std::string& id) const {
    auto it = block_index_.find(id);
    if (it == block_index_.end()) throw UnknownId(id);
    return it->second;
}

}  // namespace ifaudit
