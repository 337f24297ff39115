#include "ifaudit/population.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ifaudit {

Population::Population(std::vector<Individual> individuals, std::size_t feature_dim_hint)
    : individuals_(std::move(individuals)) {
    if (individuals_.empty()) {
        feature_dim_ = feature_dim_hint;
        return;
    }
    feature_dim_ = individuals_[0].features.size();
    std::set<std::string> uids;
    for (std::size_t i = 0; i < individuals_.size(); ++i) {
        const Individual& ind = individuals_[i];
        if (ind.id.empty()) {
            throw Error("individual at position " + std::to_string(i) + " has an empty id");
        }
        if (!index_.emplace(ind.id, i).second) {
            throw Error("duplicate id '" + ind.id + "' in population");
        }
        if (ind.features.size() != feature_dim_) {
            throw DimensionMismatch(feature_dim_, ind.features.size());
        }
        for (double f : ind.features) {
            if (!std::isfinite(f)) {
                throw Error("non-finite feature value for id '" + ind.id + "'");
            }
        }
        if (ind.uid) {
            if (ind.uid->empty()) {
                throw Error("empty uid for id '" + ind.id + "'");
            }
            if (!uids.insert(*ind.uid).second) {
                throw Error("duplicate uid '" + *ind.uid + "' in population");
            }
        }
    }
}

const Individual& Population::by_id(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownId(id);
    return individuals_[it->second];
}

std::vector<std::string> Population::groups() const {
    std::set<std::string> labels;
    for (const Individual& ind : individuals_) labels.insert(ind.group);
    return {labels.begin(), labels.end()};
}

Threshold::Threshold(double t, Direction dir) : t(t), positive_direction(dir) {
    if (!std::isfinite(t)) throw InvalidSpec("threshold must be finite");
}

ScoredPopulation::ScoredPopulation(Population population, std::map<std::string, double> scores)
    : population_(std::move(population)), scores_(std::move(scores)) {
    for (const auto& [id, score] : scores_) {
        if (!population_.contains(id)) throw UnknownId(id);
        if (!std::isfinite(score)) throw NonFiniteScore(id);
    }
    for (const Individual& ind : population_.individuals()) {
        if (scores_.find(ind.id) == scores_.end()) throw MissingScore(ind.id);
    }
}

double ScoredPopulation::score_of(const std::string& id) const {
    auto it = scores_.find(id);
    if (it == scores_.end()) throw UnknownId(id);
    return it->second;
}

std::vector<double> ScoredPopulation::scores_in_order() const {
    std::vector<double> out;
    out.reserve(population_.size());
    for (const Individual& ind : population_.individuals()) {
        out.push_back(scores_.at(ind.id));
    }
    return out;
}

double ScoredPopulation::min_score() const {
    if (scores_.empty()) throw Error("empty population has no scores");
    double m = scores_.begin()->second;
    for (const auto& [id, s] : scores_) m = std::min(m, s);
    return m;
}

double ScoredPopulation::max_score() const {
    if (scores_.empty()) throw Error("empty population has no scores");
    double m = scores_.begin()->second;
    for (const auto& [id, s] : scores_) m = std::max(m, s);
    return m;
}

ScoredPopulation apply_predictor(Population population, std::map<std::string, double> scores_by_id) {
    return ScoredPopulation(std::move(population), std::move(scores_by_id));
}

}  // namespace ifaudit
