#pragma once

#include "mobdd/instance.hpp"
#include "mobdd/ordering.hpp"

#include <map>
#include <string>
#include <vector>

namespace mobdd {

inline constexpr int kNumVariableFeatures = 18;
inline constexpr int kNumContextFeatures = 19;
inline constexpr int kNumFeatures = kNumVariableFeatures + kNumContextFeatures;

/// Column layout (frozen):
///   0..6    normalized properties (each column divided by its instance sum)
///   7..16   heuristic ranks / n, in rank_feature_heuristics() order
///   17      population SD of the item's values across objectives
///   18..20  #objectives, #items, capacity
///   21..24  weight mean, min, max, SD
///   25..36  value statistics: for stat in (mean, min, max, SD) over items,
///           reduced across objectives by (mean, min, max)
const std::vector<std::string>& feature_names();

struct FeatureRow {
    std::string instance_id;
    int variable_index = 0;  // 0-based
    std::vector<double> features;
    int label_rank = 0;  // 0 when unlabeled
};

std::vector<FeatureRow> featurize(const MkpInstance& instance);

/// Rows grouped by instance; group g spans rows [offsets[g], offsets[g+1]).
struct RankingDataset {
    std::vector<FeatureRow> rows;
    std::vector<std::size_t> offsets{0};

    std::size_t num_groups() const { return offsets.size() - 1; }
    std::size_t group_size(std::size_t g) const { return offsets[g + 1] - offsets[g]; }
    void add_group(std::vector<FeatureRow> group);
};

/// OpenMP over instances; group order follows `instances`.
std::vector<std::vector<FeatureRow>> featurize_corpus(const std::vector<MkpInstance>& instances);
std::vector<std::vector<FeatureRow>> featurize_corpus_reference(const std::vector<MkpInstance>& instances);

RankingDataset build_dataset(const std::vector<MkpInstance>& instances,
                             const std::map<std::string, RankVector>& labels);

std::string dataset_csv(const RankingDataset& dataset);
RankingDataset parse_dataset_csv(const std::string& text, const std::string& source);

}  // namespace mobdd
