#pragma once

#include "mobdd/ranker.hpp"

#include <span>
#include <vector>

namespace mobdd::gbt {

/// Row-major feature matrix plus, per column, row indices sorted by value.
struct FeatureMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;
    std::vector<std::vector<int>> sorted;

    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
    std::span<const double> row(int r) const { return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)}; }

    static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows);
};

struct NodeSums {
    double grad = 0;
    double hess = 0;
};

struct SplitParams {
    double lambda = 1.0;
    double min_child_weight = 1.0;
    double min_split_gain = 0.0;
};

struct Split {
    double gain = 0;
    int feature = -1;  // -1: no admissible split
    double threshold = 0;
};

/// Best split per open node for one tree level. node_of[r] is the open node
/// holding row r, or -1. Columns are scanned in parallel; ties keep the lower column.
std::vector<Split> find_level_splits(const FeatureMatrix& x, std::span<const int> node_of,
                                     std::span<const double> grad, std::span<const double> hess,
                                     std::span<const NodeSums> nodes, const SplitParams& params);

/// Serial reference for find_level_splits.
std::vector<Split> find_level_splits_reference(const FeatureMatrix& x, std::span<const int> node_of,
                                               std::span<const double> grad, std::span<const double> hess,
                                               std::span<const NodeSums> nodes, const SplitParams& params);

/// Grows one depth-limited tree with second-order leaf values scaled by learning_rate.
Tree grow_tree(const FeatureMatrix& x, std::span<const double> grad, std::span<const double> hess,
               const Hyperparams& hp);

}  // namespace mobdd::gbt
