#pragma once

#include "mobdd/instance.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mobdd {

/// Variables are 0-based in memory; files and the CLI print them 1-based.
/// order[k] is the variable placed at layer k.
struct VariableOrder {
    std::vector<int> order;

    int size() const { return static_cast<int>(order.size()); }
    bool operator==(const VariableOrder&) const = default;
};

/// ranks[i] is the rank of variable i; rank n belongs to the first-placed variable.
struct RankVector {
    std::vector<int> ranks;

    int size() const { return static_cast<int>(ranks.size()); }
    bool operator==(const RankVector&) const = default;
};

inline constexpr int kNumProperties = 7;

enum class Property : int {
    Weight = 0,
    AvgValue,
    MaxValue,
    MinValue,
    AvgValueByWeight,
    MaxValueByWeight,
    MinValueByWeight,
};

const std::array<std::string_view, kNumProperties>& property_names();

/// Point in [-1,1]^7, one weight per Property.
struct PropertyWeights {
    std::array<double, kNumProperties> w{};

    /// Zero everywhere except weight = -1 (reproduces the min-weight order).
    static PropertyWeights min_weight_start();
    PropertyWeights clipped() const;
    bool operator==(const PropertyWeights&) const = default;
};

/// Row-major n x 7 matrix of variable properties.
struct PropertyMatrix {
    int n = 0;
    std::vector<double> data;

    double operator()(int item, Property k) const { return data[item * kNumProperties + static_cast<int>(k)]; }
    double operator()(int item, int k) const { return data[item * kNumProperties + k]; }
    double column_sum(int k) const;
};

PropertyMatrix property_matrix(const MkpInstance& instance);

/// Sorts `keys` descending, breaking ties by ascending index.
VariableOrder order_by_descending(const std::vector<double>& keys);

std::vector<double> variable_scores(const PropertyMatrix& props, const PropertyWeights& pw);
VariableOrder score_order(const MkpInstance& instance, const PropertyWeights& pw);

/// The ten sort/property heuristics that double as rank features, in table order.
const std::vector<std::string>& rank_feature_heuristics();
/// Every name accepted by heuristic_order (random takes the form "random" or "random:<seed>").
std::vector<std::string> heuristic_names();

VariableOrder heuristic_order(const MkpInstance& instance, std::string_view name);
VariableOrder random_order(int n, std::uint64_t seed);
VariableOrder lex_order(int n);

bool is_permutation(const std::vector<int>& xs, int base);

RankVector order_to_ranks(const VariableOrder& order);
VariableOrder ranks_to_order(const RankVector& ranks);

/// Space-separated 1-based rendering and its parser.
std::string format_order(const VariableOrder& order);
VariableOrder parse_order(const std::string& text);

}  // namespace mobdd
