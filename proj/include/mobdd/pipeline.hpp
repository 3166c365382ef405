#pragma once

#include "mobdd/features.hpp"
#include "mobdd/instance.hpp"
#include "mobdd/metrics.hpp"
#include "mobdd/ranker.hpp"
#include "mobdd/tuner.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mobdd {

struct CandidateSpec {
    std::string name;
    ModelKind kind;
    FeatureSet features;
    Hyperparams hyperparams;
};

struct PipelineConfig {
    std::vector<std::pair<int, int>> sizes = {{3, 15}, {3, 20}, {4, 15}, {5, 12}};
    int train_count = 60;
    int validation_count = 20;
    int test_count = 20;
    std::uint64_t seed = 0;
    CostMode cost_mode = CostMode::Checks;
    std::filesystem::path output_dir = "out";
    TunerConfig tuner;             // per-instance labels
    TunerConfig dataset_tuner;     // single weight vector per training set
    std::vector<CandidateSpec> candidates = default_candidates();
    std::vector<std::string> methods = {"lex", "min_weight", "max_ratio", "smacd", "ml"};
    int k_random = 5;
    std::uint64_t check_limit = 0;
    int jobs = 0;

    static std::vector<CandidateSpec> default_candidates();
    void validate() const;
};

PipelineConfig load_config(const std::filesystem::path& path);
/// Applies a JSON object on top of `base` (missing keys keep their values).
PipelineConfig config_from_json(const std::string& json_text, PipelineConfig base = {});

std::string split_name(int index);  // 0 train, 1 validation, 2 test

std::uint64_t instance_seed(std::uint64_t global_seed, int split, int index);

/// Layout helpers below output_dir.
struct Layout {
    std::filesystem::path root;

    std::filesystem::path corpus(const std::string& size, const std::string& split) const;
    std::filesystem::path labels(const std::string& size, const std::string& split) const;
    std::filesystem::path smacd(const std::string& size) const;
    std::filesystem::path dataset(const std::string& size, const std::string& split) const;
    std::filesystem::path models(const std::string& size) const;
    std::filesystem::path selection(const std::string& size) const;
    std::filesystem::path reports() const;
};

std::vector<MkpInstance> load_corpus(const std::filesystem::path& dir);
std::map<std::string, RankVector> load_label_ranks(const std::filesystem::path& labels_csv);

// Pipeline stages; each writes its outputs atomically and returns what it wrote.
std::vector<std::filesystem::path> generate_corpus(const PipelineConfig& config);

/// Per-instance tuning over a corpus (OpenMP across instances).
std::vector<LabelRecord> tune_corpus(const std::vector<MkpInstance>& corpus, const TunerConfig& config);
std::vector<LabelRecord> tune_corpus_reference(const std::vector<MkpInstance>& corpus, const TunerConfig& config);

struct TrainedCandidate {
    CandidateSpec spec;
    RankModel model;
    TrainingLog log;
};

std::vector<TrainedCandidate> train_candidates(const RankingDataset& data, const std::vector<CandidateSpec>& specs);

/// A method label plus how it orders an instance.
struct Method {
    std::string label;
    std::string heuristic;  // used when neither weights nor model is set
    bool has_weights = false;
    PropertyWeights weights;
    bool has_model = false;
    RankModel model;

    VariableOrder order(const MkpInstance& instance) const;
};

/// Accepts heuristic names, lex, max_ratio, random:<seed>, smacd:<weights.csv>,
/// ml:<model file>, optionally prefixed with "label=".
Method parse_method(const std::string& spec);

std::vector<MethodRunRecord> evaluate_methods(const std::vector<MkpInstance>& instances,
                                              const std::vector<Method>& methods, const EnumerationOptions& options);

struct ReportFiles {
    std::filesystem::path records, table4, table5, fig5;
};

/// Aggregates run records into the summary, relative-to-lex and cumulative tables.
ReportFiles write_reports(const std::vector<MethodRunRecord>& records, const std::filesystem::path& dir,
                          CostMode mode);

struct PipelineSummary {
    std::map<std::string, SelectionReport> selections;  // by size
    std::vector<MethodRunRecord> records;
    std::vector<Table4Row> table4;
    std::vector<Table5Row> table5;
};

/// Runs every stage for every configured size.
PipelineSummary run_pipeline(const PipelineConfig& config);

}  // namespace mobdd
