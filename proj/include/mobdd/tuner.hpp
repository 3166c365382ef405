#pragma once

#include "mobdd/instance.hpp"
#include "mobdd/ordering.hpp"
#include "mobdd/pareto.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mobdd {

/// Randomized local search over property weights, restarted once per seed.
struct TunerConfig {
    int budget = 200;  // objective evaluations per seed
    std::vector<std::uint64_t> seeds = {0};
    double perturbation_sd = 0.2;
    double restart_fraction = 0.25;
    CostMode objective = CostMode::Checks;
    PropertyWeights warm_start = PropertyWeights::min_weight_start();

    void validate() const;
};

struct Incumbent {
    PropertyWeights weights;
    double objective_value = 0;
    /// (1-based evaluation index, best objective so far), one entry per evaluation.
    std::vector<std::pair<int, double>> trajectory;
};

using WeightsObjective = std::function<double(const PropertyWeights&)>;

/// The search loop shared by the per-instance and per-dataset tuners.
Incumbent search_weights(const WeightsObjective& objective, const TunerConfig& config);

double evaluate_weights(const MkpInstance& instance, const PropertyWeights& pw, CostMode mode);

Incumbent tune_instance(const MkpInstance& instance, const TunerConfig& config);

/// Objective is the mean cost over `instances`; per-candidate costs run as one parallel batch.
Incumbent tune_dataset(const std::vector<MkpInstance>& instances, const TunerConfig& config);

struct LabelRecord {
    std::string instance_id;
    PropertyWeights weights;
    double objective_value = 0;
    VariableOrder order;
};

std::string labels_csv(const std::vector<LabelRecord>& labels);
std::vector<LabelRecord> parse_labels_csv(const std::string& text, const std::string& source);

std::string weights_csv(const PropertyWeights& pw, double objective_value);
PropertyWeights parse_weights_csv(const std::string& text, const std::string& source);

}  // namespace mobdd
