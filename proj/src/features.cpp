#include "mobdd/features.hpp"

#include "mobdd/csv.hpp"
#include "mobdd/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mobdd {

const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (auto p : property_names()) v.emplace_back(p);
        for (const auto& h : rank_feature_heuristics()) v.push_back("rk_" + h);
        v.push_back("std-value");
        for (const char* c : {"c_num_objectives", "c_num_items", "c_capacity", "c_weight_mean", "c_weight_min",
                              "c_weight_max", "c_weight_std"}) {
            v.emplace_back(c);
        }
        for (const char* stat : {"mean", "min", "max", "std"}) {
            for (const char* red : {"mean", "min", "max"}) {
                v.push_back(std::string("c_value_") + stat + "_" + red);
            }
        }
        return v;
    }();
    return names;
}

namespace {

struct Summary {
    double mean, min, max, sd;
};

template <class Range>
Summary summarize(const Range& xs) {
    double sum = 0;
    double lo = static_cast<double>(*xs.begin());
    double hi = lo;
    std::size_t count = 0;
    for (auto x : xs) {
        const double d = static_cast<double>(x);
        sum += d;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        ++count;
    }
    const double mean = sum / static_cast<double>(count);
    double ss = 0;
    for (auto x : xs) ss += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
    return {mean, lo, hi, std::sqrt(ss / static_cast<double>(count))};
}

}  // namespace

std::vector<FeatureRow> featurize(const MkpInstance& instance) {
    const int n = instance.n;
    const auto props = property_matrix(instance);

    std::vector<std::vector<int>> heuristic_ranks;
    for (const auto& h : rank_feature_heuristics()) {
        heuristic_ranks.push_back(order_to_ranks(heuristic_order(instance, h)).ranks);
    }

    std::vector<double> context;
    context.reserve(kNumContextFeatures);
    context.push_back(instance.p);
    context.push_back(n);
    context.push_back(static_cast<double>(instance.capacity));
    const auto ws = summarize(instance.weights);
    context.insert(context.end(), {ws.mean, ws.min, ws.max, ws.sd});

    std::vector<Summary> per_objective;
    for (const auto& row : instance.values) per_objective.push_back(summarize(row));
    for (auto field : {&Summary::mean, &Summary::min, &Summary::max, &Summary::sd}) {
        std::vector<double> column;
        for (const auto& s : per_objective) column.push_back(s.*field);
        const auto agg = summarize(column);
        context.insert(context.end(), {agg.mean, agg.min, agg.max});
    }

    std::vector<double> sums(kNumProperties);
    for (int k = 0; k < kNumProperties; ++k) sums[k] = props.column_sum(k);

    std::vector<FeatureRow> rows(n);
    std::vector<Value> item_values(instance.p);
    for (int i = 0; i < n; ++i) {
        auto& r = rows[i];
        r.instance_id = instance.id;
        r.variable_index = i;
        r.features.reserve(kNumFeatures);
        for (int k = 0; k < kNumProperties; ++k) r.features.push_back(props(i, k) / sums[k]);
        for (const auto& ranks : heuristic_ranks) r.features.push_back(static_cast<double>(ranks[i]) / n);
        for (int k = 0; k < instance.p; ++k) item_values[k] = instance.value(k, i);
        r.features.push_back(summarize(item_values).sd);
        r.features.insert(r.features.end(), context.begin(), context.end());
    }
    return rows;
}

void RankingDataset::add_group(std::vector<FeatureRow> group) {
    for (auto& r : group) rows.push_back(std::move(r));
    offsets.push_back(rows.size());
}

std::vector<std::vector<FeatureRow>> featurize_corpus(const std::vector<MkpInstance>& instances) {
    std::vector<std::vector<FeatureRow>> out(instances.size());
    const long count = static_cast<long>(instances.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long j = 0; j < count; ++j) out[j] = featurize(instances[j]);
    return out;
}

std::vector<std::vector<FeatureRow>> featurize_corpus_reference(const std::vector<MkpInstance>& instances) {
    std::vector<std::vector<FeatureRow>> out;
    out.reserve(instances.size());
    for (const auto& inst : instances) out.push_back(featurize(inst));
    return out;
}

RankingDataset build_dataset(const std::vector<MkpInstance>& instances,
                             const std::map<std::string, RankVector>& labels) {
    for (const auto& inst : instances) {
        auto it = labels.find(inst.id);
        if (it == labels.end()) throw Error("build_dataset: no label for instance " + inst.id);
        if (it->second.size() != inst.n || !is_permutation(it->second.ranks, 1)) {
            throw Error("build_dataset: label for instance " + inst.id + " is not a permutation of 1.." +
                        std::to_string(inst.n));
        }
    }
    auto groups = featurize_corpus(instances);
    RankingDataset ds;
    for (std::size_t j = 0; j < instances.size(); ++j) {
        const auto& ranks = labels.at(instances[j].id).ranks;
        for (auto& row : groups[j]) row.label_rank = ranks[row.variable_index];
        ds.add_group(std::move(groups[j]));
    }
    return ds;
}

std::string dataset_csv(const RankingDataset& dataset) {
    std::string out = "instance_id,var_index";
    for (int f = 1; f <= kNumFeatures; ++f) out += ",f" + std::to_string(f);
    out += ",label\n";
    for (const auto& r : dataset.rows) {
        out += r.instance_id + "," + std::to_string(r.variable_index + 1);
        for (double x : r.features) out += "," + format_real(x);
        out += "," + (r.label_rank ? std::to_string(r.label_rank) : std::string()) + "\n";
    }
    return out;
}

RankingDataset parse_dataset_csv(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    RankingDataset ds;
    std::vector<FeatureRow> group;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        if (lineno == 1) {
            if (!line.starts_with("instance_id,var_index")) throw ParseError(source, 1, "missing dataset header");
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() != static_cast<std::size_t>(kNumFeatures + 3)) {
            throw ParseError(source, lineno, "expected " + std::to_string(kNumFeatures + 3) + " columns");
        }
        const std::string ctx = source + ":" + std::to_string(lineno);
        FeatureRow r;
        r.instance_id = cells[0];
        r.variable_index = static_cast<int>(parse_int(cells[1], ctx)) - 1;
        for (int f = 0; f < kNumFeatures; ++f) r.features.push_back(parse_real(cells[2 + f], ctx));
        const auto label = trim(cells.back());
        r.label_rank = label.empty() ? 0 : static_cast<int>(parse_int(label, ctx));
        if (!group.empty() && group.front().instance_id != r.instance_id) {
            ds.add_group(std::move(group));
            group.clear();
        }
        group.push_back(std::move(r));
    }
    if (!group.empty()) ds.add_group(std::move(group));
    return ds;
}

}  // namespace mobdd
