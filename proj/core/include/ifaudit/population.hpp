#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ifaudit/errors.hpp"

namespace ifaudit {

struct Individual {
    std::string id;
    std::string group;
    std::vector<double> features;
    std::optional<std::string> uid;

    bool operator==(const Individual&) const = default;
};

// A finite, fully materialized sample of the individual space. Immutable
// after construction; construction validates id uniqueness, uid uniqueness
// and a constant feature dimension.
class Population {
public:
    // feature_dim_hint is only consulted when `individuals` is empty.
    explicit Population(std::vector<Individual> individuals,
                        std::size_t feature_dim_hint = 0);

    const std::vector<Individual>& individuals() const { return individuals_; }
    std::size_t size() const { return individuals_.size(); }
    std::size_t feature_dim() const { return feature_dim_; }

    bool contains(const std::string& id) const { return index_.count(id) > 0; }
    const Individual& by_id(const std::string& id) const;  // throws UnknownId

    // Group labels present in the population, sorted.
    std::vector<std::string> groups() const;

    bool operator==(const Population& other) const {
        return feature_dim_ == other.feature_dim_ && individuals_ == other.individuals_;
    }

private:
    std::vector<Individual> individuals_;
    std::size_t feature_dim_ = 0;
    std::map<std::string, std::size_t> index_;
};

enum class Direction { AtOrAbove, Below };

struct Threshold {
    double t;
    Direction positive_direction = Direction::AtOrAbove;

    Threshold(double t, Direction dir = Direction::AtOrAbove);

    bool is_positive(double score) const {
        return positive_direction == Direction::AtOrAbove ? score >= t : score < t;
    }
};

// A population together with one real-valued score per individual.
class ScoredPopulation {
public:
    // Rejects extraneous ids (UnknownId), missing ids (MissingScore) and
    // non-finite scores (NonFiniteScore).
    ScoredPopulation(Population population, std::map<std::string, double> scores);

    const Population& population() const { return population_; }
    const std::map<std::string, double>& scores() const { return scores_; }
    double score_of(const std::string& id) const;

    // Scores in population order.
    std::vector<double> scores_in_order() const;

    double min_score() const;  // throws Error on an empty population
    double max_score() const;

    bool operator==(const ScoredPopulation& other) const {
        return population_ == other.population_ && scores_ == other.scores_;
    }

private:
    Population population_;
    std::map<std::string, double> scores_;
};

ScoredPopulation apply_predictor(Population population,
                                 std::map<std::string, double> scores_by_id);

}  // namespace ifaudit
