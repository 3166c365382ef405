#include "ranker_internal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace mobdd::detail {

namespace {

void fit_standardization(RankModel& model, const gbt::FeatureMatrix& x) {
    model.mean.assign(x.cols, 0.0);
    model.scale.assign(x.cols, 1.0);
    for (int c = 0; c < x.cols; ++c) {
        double s = 0;
        for (int r = 0; r < x.rows; ++r) s += x.at(r, c);
        const double m = s / x.rows;
        double ss = 0;
        for (int r = 0; r < x.rows; ++r) ss += (x.at(r, c) - m) * (x.at(r, c) - m);
        const double sd = std::sqrt(ss / x.rows);
        model.mean[c] = m;
        model.scale[c] = sd > 1e-12 ? sd : 1.0;
    }
}

Eigen::MatrixXd standardized(const RankModel& model, const gbt::FeatureMatrix& x) {
    Eigen::MatrixXd z(x.rows, x.cols);
    for (int r = 0; r < x.rows; ++r) {
        for (int c = 0; c < x.cols; ++c) z(r, c) = (x.at(r, c) - model.mean[c]) / model.scale[c];
    }
    return z;
}

}  // namespace

void train_linear_pointwise(RankModel& model, const TrainingSet& ts, TrainingLog* log) {
    fit_standardization(model, ts.x);
    const Eigen::MatrixXd z = standardized(model, ts.x);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ts.label.data(), static_cast<Eigen::Index>(ts.label.size()));
    const double y_mean = y.mean();

    Eigen::MatrixXd gram = z.transpose() * z;
    gram.diagonal().array() += model.hyperparams.l2 * ts.x.rows;
    const Eigen::VectorXd w = gram.ldlt().solve(z.transpose() * (y.array() - y_mean).matrix());

    model.weights.assign(w.data(), w.data() + w.size());
    model.bias = y_mean;

    if (log) {
        const Eigen::VectorXd pred = (z * w).array() + y_mean;
        std::vector<double> scores(pred.data(), pred.data() + pred.size());
        log->entries.push_back({1, (pred - y).squaredNorm() / ts.x.rows, pair_fraction(ts, scores)});
    }
}

// Dual coordinate descent for the L1-loss linear SVM over pair differences
// (no bias: it cancels in every difference).
void train_linear_pairwise(RankModel& model, const TrainingSet& ts, TrainingLog* log) {
    fit_standardization(model, ts.x);
    const Eigen::MatrixXd z = standardized(model, ts.x);
    const int d = ts.x.cols;
    const double c_box = model.hyperparams.svm_c;
    const std::size_t m = ts.pairs.size();

    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    std::vector<double> alpha(m, 0.0);
    std::vector<double> qdiag(m);
    for (std::size_t k = 0; k < m; ++k) {
        qdiag[k] = (z.row(ts.pairs[k].first) - z.row(ts.pairs[k].second)).squaredNorm();
    }

    std::vector<std::size_t> perm(m);
    for (std::size_t k = 0; k < m; ++k) perm[k] = k;
    std::mt19937_64 rng(model.hyperparams.seed);

    auto scores_now = [&]() {
        const Eigen::VectorXd s = z * w;
        return std::vector<double>(s.data(), s.data() + s.size());
    };

    for (int epoch = 1; epoch <= model.hyperparams.epochs; ++epoch) {
        for (std::size_t i = m; i > 1; --i) {
            std::uniform_int_distribution<std::size_t> pick(0, i - 1);
            std::swap(perm[i - 1], perm[pick(rng)]);
        }
        double pg_max = -1e300, pg_min = 1e300;
        for (std::size_t k : perm) {
            if (qdiag[k] <= 0) continue;
            const auto [hi, lo] = ts.pairs[k];
            const double g = w.dot(z.row(hi) - z.row(lo)) - 1.0;
            double pg = g;
            if (alpha[k] <= 0) pg = std::min(g, 0.0);
            else if (alpha[k] >= c_box) pg = std::max(g, 0.0);
            pg_max = std::max(pg_max, pg);
            pg_min = std::min(pg_min, pg);
            if (std::abs(pg) < 1e-12) continue;
            const double next = std::clamp(alpha[k] - g / qdiag[k], 0.0, c_box);
            w += (next - alpha[k]) * (z.row(hi) - z.row(lo)).transpose();
            alpha[k] = next;
        }
        if (log) {
            const auto s = scores_now();
            double hinge = 0;
            for (const auto& [hi, lo] : ts.pairs) hinge += std::max(0.0, 1.0 - (s[hi] - s[lo]));
            log->entries.push_back({epoch, m ? hinge / static_cast<double>(m) : 0.0, pair_fraction(ts, s)});
        }
        if (m == 0 || pg_max - pg_min < 1e-4) break;
    }
    model.weights.assign(w.data(), w.data() + w.size());
    model.bias = 0;
}

}  // namespace mobdd::detail
