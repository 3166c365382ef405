#pragma once

#include "mobdd/features.hpp"
#include "mobdd/instance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

namespace mobdd::testing {

/// Small hand-checked instance: p=2, n=3, w=(3,3,4), W=5, a1=(3,1,2), a2=(1,3,2).
inline MkpInstance t2() {
    MkpInstance inst;
    inst.id = "t2";
    inst.p = 2;
    inst.n = 3;
    inst.weights = {3, 3, 4};
    inst.values = {{3, 1, 2}, {1, 3, 2}};
    inst.capacity = 5;
    return inst;
}

inline constexpr const char* kT2File = "2 3\n5\n3 3 4\n3 1 2\n1 3 2\n";

/// Random instance with a random capacity ratio; size drawn from [n_lo, n_hi].
inline MkpInstance random_instance(std::mt19937_64& rng, int p, int n_lo, int n_hi) {
    std::uniform_int_distribution<int> size(n_lo, n_hi);
    std::uniform_int_distribution<std::uint64_t> seed;
    auto inst = generate_instance(seed(rng), p, size(rng));
    std::uniform_real_distribution<double> ratio(0.1, 0.9);
    inst.capacity = std::max<Value>(1, static_cast<Value>(ratio(rng) * static_cast<double>(inst.total_weight())));
    return inst;
}

inline constexpr std::array<double, 5> kPlantedWeights{1.0, -0.7, 0.5, 0.3, -0.2};

/// Groups of random 37-wide rows whose labels follow a linear utility over the
/// first five columns. Items inside a group are resampled until every pair of
/// utilities differs by at least `margin`.
inline RankingDataset planted_dataset(int groups, int group_size, std::uint64_t seed, double margin = 0.05) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    RankingDataset ds;
    for (int g = 0; g < groups; ++g) {
        std::vector<FeatureRow> rows;
        std::vector<double> util;
        while (static_cast<int>(rows.size()) < group_size) {
            FeatureRow r;
            r.instance_id = "g" + std::to_string(g);
            r.variable_index = static_cast<int>(rows.size());
            for (int c = 0; c < kNumFeatures; ++c) r.features.push_back(u(rng));
            double s = 0;
            for (int c = 0; c < 5; ++c) s += kPlantedWeights[c] * r.features[c];
            bool clear = std::all_of(util.begin(), util.end(), [&](double o) { return std::abs(o - s) >= margin; });
            if (!clear) continue;
            util.push_back(s);
            rows.push_back(std::move(r));
        }
        std::vector<int> idx(group_size);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return util[a] > util[b]; });
        for (int pos = 0; pos < group_size; ++pos) rows[idx[pos]].label_rank = group_size - pos;
        ds.add_group(std::move(rows));
    }
    return ds;
}

}  // namespace mobdd::testing
