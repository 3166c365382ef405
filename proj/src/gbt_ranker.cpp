#include "mobdd/gbt.hpp"

#include "ranker_internal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace mobdd::gbt {

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    FeatureMatrix m;
    m.rows = static_cast<int>(rows.size());
    m.cols = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    m.data.reserve(static_cast<std::size_t>(m.rows) * m.cols);
    for (const auto& r : rows) m.data.insert(m.data.end(), r.begin(), r.end());
    m.sorted.resize(m.cols);
    for (int c = 0; c < m.cols; ++c) {
        auto& idx = m.sorted[c];
        idx.resize(m.rows);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return m.at(a, c) < m.at(b, c); });
    }
    return m;
}

namespace {

double leaf_weight(double g, double h, double lambda) { return -g / (h + lambda); }

double score_term(double g, double h, double lambda) { return g * g / (h + lambda); }

/// Best split of every open node along one column.
void scan_column(const FeatureMatrix& x, int col, std::span<const int> node_of, std::span<const double> grad,
                 std::span<const double> hess, std::span<const NodeSums> nodes, const SplitParams& params,
                 std::vector<Split>& best) {
    const std::size_t open = nodes.size();
    std::vector<double> gl(open, 0.0), hl(open, 0.0), last(open, 0.0);
    std::vector<char> seen(open, 0);
    best.assign(open, Split{params.min_split_gain + 1e-12, -1, 0});

    for (int r : x.sorted[col]) {
        const int nd = node_of[r];
        if (nd < 0) continue;
        const double v = x.at(r, col);
        if (seen[nd] && v > last[nd]) {
            const double hr = nodes[nd].hess - hl[nd];
            if (hl[nd] >= params.min_child_weight && hr >= params.min_child_weight) {
                const double gr = nodes[nd].grad - gl[nd];
                const double gain = 0.5 * (score_term(gl[nd], hl[nd], params.lambda) +
                                           score_term(gr, hr, params.lambda) -
                                           score_term(nodes[nd].grad, nodes[nd].hess, params.lambda));
                if (gain > best[nd].gain) {
                    double thr = last[nd] + (v - last[nd]) / 2;
                    if (!(thr > last[nd])) thr = v;
                    best[nd] = Split{gain, col, thr};
                }
            }
        }
        gl[nd] += grad[r];
        hl[nd] += hess[r];
        last[nd] = v;
        seen[nd] = 1;
    }
}

std::vector<Split> reduce_columns(const std::vector<std::vector<Split>>& per_column, std::size_t open) {
    std::vector<Split> out(open);
    for (std::size_t nd = 0; nd < open; ++nd) {
        for (const auto& col : per_column) {
            if (col[nd].feature >= 0 && (out[nd].feature < 0 || col[nd].gain > out[nd].gain)) out[nd] = col[nd];
        }
    }
    return out;
}

}  // namespace

std::vector<Split> find_level_splits(const FeatureMatrix& x, std::span<const int> node_of,
                                     std::span<const double> grad, std::span<const double> hess,
                                     std::span<const NodeSums> nodes, const SplitParams& params) {
    std::vector<std::vector<Split>> per_column(x.cols);
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < x.cols; ++c) scan_column(x, c, node_of, grad, hess, nodes, params, per_column[c]);
    return reduce_columns(per_column, nodes.size());
}

std::vector<Split> find_level_splits_reference(const FeatureMatrix& x, std::span<const int> node_of,
                                               std::span<const double> grad, std::span<const double> hess,
                                               std::span<const NodeSums> nodes, const SplitParams& params) {
    std::vector<std::vector<Split>> per_column(x.cols);
    for (int c = 0; c < x.cols; ++c) scan_column(x, c, node_of, grad, hess, nodes, params, per_column[c]);
    return reduce_columns(per_column, nodes.size());
}

Tree grow_tree(const FeatureMatrix& x, std::span<const double> grad, std::span<const double> hess,
               const Hyperparams& hp) {
    const SplitParams params{hp.lambda, hp.min_child_weight, hp.min_split_gain};
    Tree tree;
    tree.nodes.push_back(TreeNode{});
    std::vector<int> open_ids{0};  // open index -> tree node id
    std::vector<int> node_of(x.rows, 0);

    auto sums_of_open = [&]() {
        std::vector<NodeSums> sums(open_ids.size());
        for (int r = 0; r < x.rows; ++r) {
            if (node_of[r] < 0) continue;
            sums[node_of[r]].grad += grad[r];
            sums[node_of[r]].hess += hess[r];
        }
        return sums;
    };
    auto make_leaf = [&](int id, const NodeSums& s) {
        tree.nodes[id].feature = -1;
        tree.nodes[id].leaf = hp.learning_rate * leaf_weight(s.grad, s.hess, hp.lambda);
    };

    for (int depth = 0; depth < hp.max_depth && !open_ids.empty(); ++depth) {
        const auto sums = sums_of_open();
        const auto splits = find_level_splits(x, node_of, grad, hess, sums, params);

        std::vector<int> next_ids;
        std::vector<int> remap(open_ids.size() * 2, -1);  // (open, side) -> next open index
        for (std::size_t o = 0; o < open_ids.size(); ++o) {
            const int id = open_ids[o];
            if (splits[o].feature < 0) {
                make_leaf(id, sums[o]);
                continue;
            }
            const int left = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back(TreeNode{});
            tree.nodes.push_back(TreeNode{});
            auto& node = tree.nodes[id];
            node.feature = splits[o].feature;
            node.threshold = splits[o].threshold;
            node.left = left;
            node.right = left + 1;
            remap[2 * o] = static_cast<int>(next_ids.size());
            next_ids.push_back(left);
            remap[2 * o + 1] = static_cast<int>(next_ids.size());
            next_ids.push_back(left + 1);
        }
        for (int r = 0; r < x.rows; ++r) {
            const int o = node_of[r];
            if (o < 0) continue;
            const auto& s = splits[o];
            if (s.feature < 0) {
                node_of[r] = -1;
            } else {
                node_of[r] = remap[2 * o + (x.at(r, s.feature) < s.threshold ? 0 : 1)];
            }
        }
        open_ids = std::move(next_ids);
    }
    if (!open_ids.empty()) {
        const auto sums = sums_of_open();
        for (std::size_t o = 0; o < open_ids.size(); ++o) make_leaf(open_ids[o], sums[o]);
    }
    return tree;
}

}  // namespace mobdd::gbt

namespace mobdd::detail {

namespace {

std::vector<double> predict_all(const Tree& tree, const gbt::FeatureMatrix& x) {
    std::vector<double> out(x.rows);
    for (int r = 0; r < x.rows; ++r) out[r] = tree.predict(x.row(r));
    return out;
}

void boost(RankModel& model, const TrainingSet& ts, TrainingLog* log, double base,
           const std::function<double(const std::vector<double>&, std::vector<double>&, std::vector<double>&)>& gradients) {
    model.base_score = base;
    model.trees.clear();
    std::vector<double> pred(ts.x.rows, base);
    std::vector<double> grad(ts.x.rows), hess(ts.x.rows);
    double loss = gradients(pred, grad, hess);
    if (log) log->entries.push_back({0, loss, pair_fraction(ts, pred)});
    for (int round = 1; round <= model.hyperparams.rounds; ++round) {
        auto tree = gbt::grow_tree(ts.x, grad, hess, model.hyperparams);
        const auto step = predict_all(tree, ts.x);
        for (int r = 0; r < ts.x.rows; ++r) pred[r] += step[r];
        model.trees.push_back(std::move(tree));
        loss = gradients(pred, grad, hess);
        if (log) log->entries.push_back({round, loss, pair_fraction(ts, pred)});
    }
}

}  // namespace

void train_gbt_pointwise(RankModel& model, const TrainingSet& ts, TrainingLog* log) {
    const double base = std::accumulate(ts.label.begin(), ts.label.end(), 0.0) / static_cast<double>(ts.label.size());
    boost(model, ts, log, base, [&](const std::vector<double>& pred, std::vector<double>& g, std::vector<double>& h) {
        double sse = 0;
        for (std::size_t r = 0; r < pred.size(); ++r) {
            const double e = pred[r] - ts.label[r];
            g[r] = e;
            h[r] = 1.0;
            sse += e * e;
        }
        return sse / static_cast<double>(pred.size());
    });
}

void train_gbt_pairwise(RankModel& model, const TrainingSet& ts, TrainingLog* log) {
    boost(model, ts, log, 0.0, [&](const std::vector<double>& pred, std::vector<double>& g, std::vector<double>& h) {
        std::fill(g.begin(), g.end(), 0.0);
        std::fill(h.begin(), h.end(), 0.0);
        double loss = 0;
        for (const auto& [hi, lo] : ts.pairs) {
            const double margin = pred[hi] - pred[lo];
            const double rho = 1.0 / (1.0 + std::exp(margin));  // d/dmargin of log(1 + e^-margin), negated
            g[hi] -= rho;
            g[lo] += rho;
            const double w = std::max(rho * (1.0 - rho), 1e-16);
            h[hi] += w;
            h[lo] += w;
            loss += margin > 0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
        }
        return ts.pairs.empty() ? 0.0 : loss / static_cast<double>(ts.pairs.size());
    });
}

}  // namespace mobdd::detail
