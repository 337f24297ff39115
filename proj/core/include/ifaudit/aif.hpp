#pragma once

#include <optional>
#include <string>

#include "ifaudit/distribution.hpp"

namespace ifaudit {

// Groups ids whose distributions are exactly equal. On a finite discrete
// instance this is the partition induced by the minimal sufficient statistic
// of the table's conditional distributions.
Partition partition_by_distribution(const DistributionTable& table);

// True iff every block of `fine` is contained in some block of `coarse`.
// Throws UniverseMismatch when the partitions cover different ids.
bool is_coarsening(const Partition& coarse, const Partition& fine);

struct AifWitness {
    std::string p;
    std::string q;
    bool operator==(const AifWitness&) const = default;
};

struct AifCheckResult {
    bool holds = true;
    std::optional<AifWitness> witness;  // first violating pair in id order
};

// Definition-level check over all id pairs: equal f_Y rows must imply equal
// f_Yhat rows. Outcome sets of the two tables may differ; the id universes
// must match.
AifCheckResult check_aif_direct(const DistributionTable& f_y, const DistributionTable& f_yhat);

// Equivalent route via minimal-sufficient-statistic partitions: the
// prediction partition must coarsen the ground-truth partition. Agrees with
// check_aif_direct on every input.
bool check_aif_via_mss(const DistributionTable& f_y, const DistributionTable& f_yhat);

}  // namespace ifaudit
