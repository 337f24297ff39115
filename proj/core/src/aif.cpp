#include "ifaudit/aif.hpp"

#include <map>

#include "ifaudit/errors.hpp"

namespace ifaudit {

Partition partition_by_distribution(const DistributionTable& table) {
    // Rows are grouped by exact rational equality of the distribution vector.
    // The map key orders blocks deterministically; Partition renormalizes.
    std::map<std::vector<Rational>, std::vector<std::string>> by_row;
    for (const auto& [id, row] : table.rows()) by_row[row].push_back(id);

    std::vector<std::vector<std::string>> blocks;
    blocks.reserve(by_row.size());
    for (auto& [row, ids] : by_row) blocks.push_back(std::move(ids));
    return Partition::from_blocks(std::move(blocks));
}

bool is_coarsening(const Partition& coarse, const Partition& fine) {
    if (coarse.universe() != fine.universe()) throw UniverseMismatch();
    for (const auto& block : fine.blocks()) {
        const std::size_t home = coarse.block_of(block.front());
        for (const std::string& id : block) {
            if (coarse.block_of(id) != home) return false;
        }
    }
    return true;
}

AifCheckResult check_aif_direct(const DistributionTable& f_y, const DistributionTable& f_yhat) {
    if (!f_y.same_universe(f_yhat)) throw UniverseMismatch();
    const std::vector<std::string> ids = f_y.ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            if (f_y.row(ids[i]) == f_y.row(ids[j]) && f_yhat.row(ids[i]) != f_yhat.row(ids[j])) {
                return {false, AifWitness{ids[i], ids[j]}};
            }
        }
    }
    return {true, std::nullopt};
}

bool check_aif_via_mss(const DistributionTable& f_y, const DistributionTable& f_yhat) {
    if (!f_y.same_universe(f_yhat)) throw UniverseMismatch();
    return is_coarsening(partition_by_distribution(f_yhat), partition_by_distribution(f_y));
}

}  // namespace ifaudit
