#pragma once

#include "mobdd/features.hpp"
#include "mobdd/instance.hpp"
#include "mobdd/ordering.hpp"
#include "mobdd/pareto.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mobdd {

enum class ModelKind { LinearPointwise, LinearPairwise, GbtPointwise, GbtPairwise };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& s);
bool is_tree_model(ModelKind kind);
bool is_pairwise(ModelKind kind);

/// Which feature columns a model consumes.
enum class FeatureSet { Variable, All };

std::string to_string(FeatureSet set);
FeatureSet parse_feature_set(const std::string& s);
std::vector<int> feature_columns(FeatureSet set);

struct Hyperparams {
    // linear
    double l2 = 1e-3;       // ridge penalty (pointwise)
    double svm_c = 1.0;     // hinge-loss box constraint (pairwise)
    int epochs = 200;       // coordinate-descent sweeps (pairwise)
    // trees
    int rounds = 100;
    int max_depth = 6;
    double learning_rate = 0.1;
    double lambda = 1.0;
    double min_child_weight = 1.0;
    double min_split_gain = 0.0;
    std::uint64_t seed = 0;

    std::string to_string() const;
    static Hyperparams parse(const std::string& text);
    bool operator==(const Hyperparams&) const = default;
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf; otherwise index into the model's column list
    double threshold = 0;
    int left = -1;  // taken when x[feature] < threshold
    int right = -1;
    double leaf = 0;
    bool operator==(const TreeNode&) const = default;
};

struct Tree {
    std::vector<TreeNode> nodes;
    double predict(std::span<const double> x) const;
    int depth() const;
    bool operator==(const Tree&) const = default;
};

class RankModel {
public:
    ModelKind kind = ModelKind::GbtPairwise;
    FeatureSet feature_set = FeatureSet::All;
    Hyperparams hyperparams;

    // linear models work on standardized columns
    std::vector<double> mean;
    std::vector<double> scale;
    std::vector<double> weights;
    double bias = 0;

    double base_score = 0;
    std::vector<Tree> trees;

    /// Score of one variable from its full 37-wide feature row.
    double score(std::span<const double> features) const;
    std::size_t num_parameters() const;

    std::string serialize() const;
    static RankModel parse(const std::string& text, const std::string& source = "<model>");
    bool operator==(const RankModel&) const = default;
};

struct TrainingLogEntry {
    int round = 0;
    double loss = 0;
    double satisfied_pairs = 0;
};

struct TrainingLog {
    std::vector<TrainingLogEntry> entries;
    std::string csv() const;
};

RankModel train_pointwise(const RankingDataset& data, ModelKind kind, FeatureSet features, const Hyperparams& hp,
                          TrainingLog* log = nullptr);
RankModel train_pairwise(const RankingDataset& data, ModelKind kind, FeatureSet features, const Hyperparams& hp,
                         TrainingLog* log = nullptr);
/// Dispatches on kind.
RankModel train_model(const RankingDataset& data, ModelKind kind, FeatureSet features, const Hyperparams& hp,
                      TrainingLog* log = nullptr);

std::vector<double> predict_scores(const RankModel& model, const std::vector<FeatureRow>& rows);
VariableOrder predict_order(const RankModel& model, const MkpInstance& instance);
VariableOrder order_from_scores(const std::vector<double>& scores);

double kendall_tau(const RankVector& predicted, const RankVector& label);

/// Fraction of label-ordered pairs (label_i > label_j) whose scores agree strictly.
double satisfied_pair_fraction(const RankingDataset& data, const std::vector<double>& scores);
/// Mean per-group tau of the score-induced order against the labels; groups
/// whose labels are constant contribute 0.
double mean_kendall_tau(const RankingDataset& data, const std::vector<double>& scores);

struct NamedModel {
    std::string name;
    RankModel model;
};

struct CandidateResult {
    std::string name;
    ModelKind kind;
    double mean_tau = 0;
    bool class_winner = false;
    double mean_cost = 0;  // filled for class winners only
    std::size_t num_parameters = 0;
};

struct SelectionReport {
    std::vector<CandidateResult> candidates;
    std::string winner;
    double winner_cost = 0;

    std::string csv() const;
};

SelectionReport select_model(const std::vector<NamedModel>& candidates,
                             const std::vector<MkpInstance>& validation,
                             const std::map<std::string, RankVector>& validation_labels,
                             const EnumerationOptions& options = {});

/// Split counts per feature (all 37 columns) normalized by the largest count.
std::vector<double> feature_importance(const RankModel& model);
std::string feature_importance_csv(const std::vector<double>& importance);

}  // namespace mobdd
