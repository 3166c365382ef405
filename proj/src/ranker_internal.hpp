#pragma once

#include "mobdd/gbt.hpp"
#include "mobdd/ranker.hpp"

#include <utility>
#include <vector>

namespace mobdd::detail {

/// Training view of a dataset: retained rows, their selected columns, and labels.
struct TrainingSet {
    gbt::FeatureMatrix x;
    std::vector<double> label;
    std::vector<std::size_t> offsets{0};  // groups after dropping single-row ones
    std::vector<std::pair<int, int>> pairs;  // (higher-ranked row, lower-ranked row)
};

TrainingSet make_training_set(const RankingDataset& data, const std::vector<int>& columns);

double pair_fraction(const TrainingSet& ts, const std::vector<double>& scores);

void train_linear_pointwise(RankModel& model, const TrainingSet& ts, TrainingLog* log);
void train_linear_pairwise(RankModel& model, const TrainingSet& ts, TrainingLog* log);
void train_gbt_pointwise(RankModel& model, const TrainingSet& ts, TrainingLog* log);
void train_gbt_pairwise(RankModel& model, const TrainingSet& ts, TrainingLog* log);

}  // namespace mobdd::detail
