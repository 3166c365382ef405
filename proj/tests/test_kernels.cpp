#include "fixtures.hpp"

#include "mobdd/features.hpp"
#include "mobdd/gbt.hpp"
#include "mobdd/kernels.hpp"
#include "mobdd/pipeline.hpp"

#include <doctest.h>

#include <random>

using namespace mobdd;

namespace {

// Runs the body once with a single thread and once with several.
template <class F>
void across_thread_counts(F body) {
    const int saved = max_threads();
    for (int t : {1, 4}) {
        set_threads(t);
        body();
    }
    set_threads(saved);
}

}  // namespace

TEST_CASE("parallel batch evaluation matches the serial reference") {
    std::mt19937_64 rng(5);
    std::vector<MkpInstance> insts;
    for (int i = 0; i < 24; ++i) insts.push_back(testing::random_instance(rng, 2 + i % 3, 6, 14));
    std::vector<EvalTask> tasks;
    for (const auto& inst : insts) {
        tasks.push_back({&inst, lex_order(inst.n)});
        tasks.push_back({&inst, random_order(inst.n, rng())});
    }
    const auto ref = evaluate_batch_reference(tasks, {});
    across_thread_counts([&] {
        const auto par = evaluate_batch(tasks, {});
        REQUIRE(par.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(par[i].report.frontier == ref[i].report.frontier);
            CHECK(par[i].report.checks == ref[i].report.checks);
            CHECK(par[i].report.intermediate_per_layer == ref[i].report.intermediate_per_layer);
            CHECK(par[i].stats == ref[i].stats);
        }
    });
}

TEST_CASE("batch errors propagate out of the parallel region") {
    const auto inst = testing::t2();
    std::vector<EvalTask> tasks{{&inst, lex_order(3)}, {&inst, VariableOrder{{0, 0, 1}}}};
    CHECK_THROWS(evaluate_batch(tasks, {}));
}

TEST_CASE("parallel split search matches the serial reference") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> coarse(0, 4);
    const int rows = 300, cols = 12, open = 3;
    std::vector<std::vector<double>> xs(rows, std::vector<double>(cols));
    for (auto& r : xs) {
        for (int c = 0; c < cols; ++c) r[c] = c % 3 == 0 ? coarse(rng) : u(rng);  // some columns carry ties
    }
    const auto x = gbt::FeatureMatrix::from_rows(xs);
    std::vector<int> node_of(rows);
    std::vector<double> grad(rows), hess(rows);
    std::vector<gbt::NodeSums> sums(open);
    for (int r = 0; r < rows; ++r) {
        node_of[r] = r % 7 == 0 ? -1 : r % open;
        grad[r] = u(rng);
        hess[r] = 0.5 + 0.5 * (u(rng) + 1);
        if (node_of[r] >= 0) {
            sums[node_of[r]].grad += grad[r];
            sums[node_of[r]].hess += hess[r];
        }
    }
    const gbt::SplitParams params;
    const auto ref = gbt::find_level_splits_reference(x, node_of, grad, hess, sums, params);
    across_thread_counts([&] {
        const auto par = gbt::find_level_splits(x, node_of, grad, hess, sums, params);
        REQUIRE(par.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(par[i].feature == ref[i].feature);
            CHECK(par[i].threshold == ref[i].threshold);
            CHECK(par[i].gain == ref[i].gain);
            CHECK(par[i].feature >= 0);
        }
    });
}

TEST_CASE("parallel featurization matches the serial reference") {
    std::vector<MkpInstance> insts;
    for (int i = 0; i < 15; ++i) insts.push_back(generate_instance(i, 2 + i % 4, 5 + i));
    const auto ref = featurize_corpus_reference(insts);
    across_thread_counts([&] {
        const auto par = featurize_corpus(insts);
        REQUIRE(par.size() == ref.size());
        for (std::size_t g = 0; g < ref.size(); ++g) {
            REQUIRE(par[g].size() == ref[g].size());
            for (std::size_t r = 0; r < ref[g].size(); ++r) {
                CHECK(par[g][r].instance_id == ref[g][r].instance_id);
                CHECK(par[g][r].features == ref[g][r].features);
            }
        }
    });
}

TEST_CASE("parallel corpus tuning matches the serial reference") {
    std::vector<MkpInstance> insts;
    for (int i = 0; i < 6; ++i) insts.push_back(generate_instance(100 + i, 3, 10));
    TunerConfig cfg;
    cfg.budget = 15;
    cfg.seeds = {0, 1};
    const auto ref = tune_corpus_reference(insts, cfg);
    across_thread_counts([&] {
        const auto par = tune_corpus(insts, cfg);
        REQUIRE(par.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(par[i].instance_id == ref[i].instance_id);
            CHECK(par[i].weights == ref[i].weights);
            CHECK(par[i].objective_value == ref[i].objective_value);
            CHECK(par[i].order == ref[i].order);
        }
    });
}
