#include "mobdd/features.hpp"
#include "mobdd/gbt.hpp"
#include "mobdd/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace mobdd;

namespace {

const std::vector<MkpInstance>& corpus() {
    static const std::vector<MkpInstance> insts = [] {
        std::vector<MkpInstance> v;
        for (int i = 0; i < 32; ++i) v.push_back(generate_instance(900 + i, 3, 18));
        return v;
    }();
    return insts;
}

std::vector<EvalTask> tasks() {
    std::vector<EvalTask> t;
    for (const auto& inst : corpus()) t.push_back({&inst, heuristic_order(inst, "min_weight")});
    return t;
}

struct SplitInput {
    gbt::FeatureMatrix x;
    std::vector<int> node_of;
    std::vector<double> grad, hess;
    std::vector<gbt::NodeSums> sums;
};

const SplitInput& split_input() {
    static const SplitInput in = [] {
        SplitInput s;
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-1, 1);
        const int rows = 20000, cols = 37, open = 8;
        std::vector<std::vector<double>> xs(rows, std::vector<double>(cols));
        for (auto& r : xs) {
            for (auto& v : r) v = u(rng);
        }
        s.x = gbt::FeatureMatrix::from_rows(xs);
        s.sums.resize(open);
        for (int r = 0; r < rows; ++r) {
            s.node_of.push_back(r % open);
            s.grad.push_back(u(rng));
            s.hess.push_back(1.0);
            s.sums[r % open].grad += s.grad.back();
            s.sums[r % open].hess += 1.0;
        }
        return s;
    }();
    return in;
}

void BM_EvaluateBatchSerial(benchmark::State& state) {
    const auto t = tasks();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch_reference(t, {}));
}

void BM_EvaluateBatchParallel(benchmark::State& state) {
    const auto t = tasks();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(t, {}));
}

void BM_SplitSearchSerial(benchmark::State& state) {
    const auto& s = split_input();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gbt::find_level_splits_reference(s.x, s.node_of, s.grad, s.hess, s.sums, {}));
    }
}

void BM_SplitSearchParallel(benchmark::State& state) {
    const auto& s = split_input();
    for (auto _ : state) benchmark::DoNotOptimize(gbt::find_level_splits(s.x, s.node_of, s.grad, s.hess, s.sums, {}));
}

void BM_FeaturizeSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(featurize_corpus_reference(corpus()));
}

void BM_FeaturizeParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(featurize_corpus(corpus()));
}

}  // namespace

BENCHMARK(BM_EvaluateBatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateBatchParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitSearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitSearchParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FeaturizeSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FeaturizeParallel)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
