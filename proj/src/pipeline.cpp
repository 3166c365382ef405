#include "mobdd/pipeline.hpp"

#include "mobdd/csv.hpp"
#include "mobdd/error.hpp"
#include "mobdd/kernels.hpp"

#include <json.hpp>

#include <algorithm>
#include <exception>
#include <iostream>

namespace mobdd {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<CandidateSpec> PipelineConfig::default_candidates() {
    auto hp = [](const std::string& text) { return Hyperparams::parse(text); };
    return {
        {"linear_pointwise", ModelKind::LinearPointwise, FeatureSet::Variable, hp("l2=0.001")},
        {"linear_pairwise", ModelKind::LinearPairwise, FeatureSet::Variable, hp("svm_c=1 epochs=200")},
        {"gbt_pointwise_d3", ModelKind::GbtPointwise, FeatureSet::All, hp("rounds=100 max_depth=3 learning_rate=0.1")},
        {"gbt_pointwise_d6", ModelKind::GbtPointwise, FeatureSet::All, hp("rounds=100 max_depth=6 learning_rate=0.1")},
        {"gbt_pairwise_d3", ModelKind::GbtPairwise, FeatureSet::All, hp("rounds=100 max_depth=3 learning_rate=0.1")},
        {"gbt_pairwise_d6", ModelKind::GbtPairwise, FeatureSet::All, hp("rounds=100 max_depth=6 learning_rate=0.1")},
    };
}

void PipelineConfig::validate() const {
    if (sizes.empty()) throw Error("config: no sizes");
    for (auto [p, n] : sizes) {
        if (p < 1 || n < 1) throw Error("config: sizes must be positive");
    }
    if (train_count < 1 || validation_count < 1 || test_count < 1) throw Error("config: split counts must be >= 1");
    if (candidates.empty()) throw Error("config: no ranker candidates");
    if (k_random < 1) throw Error("config: k_random must be >= 1");
    tuner.validate();
    dataset_tuner.validate();
}

namespace {

void apply_tuner(const json& j, TunerConfig& t) {
    if (j.contains("budget")) t.budget = j["budget"].get<int>();
    if (j.contains("seeds")) t.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("perturbation_sd")) t.perturbation_sd = j["perturbation_sd"].get<double>();
    if (j.contains("restart_fraction")) t.restart_fraction = j["restart_fraction"].get<double>();
}

}  // namespace

PipelineConfig config_from_json(const std::string& json_text, PipelineConfig c) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(std::string("config: invalid JSON: ") + e.what());
    }
    try {
        if (j.contains("sizes")) {
            c.sizes.clear();
            for (const auto& s : j["sizes"]) c.sizes.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
        }
        if (j.contains("splits")) {
            const auto& s = j["splits"];
            if (s.contains("train")) c.train_count = s["train"].get<int>();
            if (s.contains("validation")) c.validation_count = s["validation"].get<int>();
            if (s.contains("test")) c.test_count = s["test"].get<int>();
        }
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("cost_mode")) c.cost_mode = parse_cost_mode(j["cost_mode"].get<std::string>());
        if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
        if (j.contains("tuner")) apply_tuner(j["tuner"], c.tuner);
        if (j.contains("dataset_tuner")) apply_tuner(j["dataset_tuner"], c.dataset_tuner);
        if (j.contains("candidates")) {
            c.candidates.clear();
            for (const auto& e : j["candidates"]) {
                CandidateSpec spec;
                spec.kind = parse_model_kind(e.at("kind").get<std::string>());
                spec.name = e.value("name", to_string(spec.kind));
                spec.features = parse_feature_set(e.value("features", "all"));
                spec.hyperparams = Hyperparams::parse(e.value("hyperparams", ""));
                c.candidates.push_back(spec);
            }
        }
        if (j.contains("methods")) c.methods = j["methods"].get<std::vector<std::string>>();
        if (j.contains("k_random")) c.k_random = j["k_random"].get<int>();
        if (j.contains("check_limit")) c.check_limit = j["check_limit"].get<std::uint64_t>();
        if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    } catch (const json::exception& e) {
        throw Error(std::string("config: ") + e.what());
    }
    for (auto t : {&c.tuner, &c.dataset_tuner}) t->objective = c.cost_mode;
    c.validate();
    return c;
}

PipelineConfig load_config(const fs::path& path) { return config_from_json(read_file(path)); }

std::string split_name(int index) {
    static const char* names[] = {"train", "validation", "test"};
    if (index < 0 || index > 2) throw Error("split index out of range");
    return names[index];
}

std::uint64_t instance_seed(std::uint64_t global_seed, int split, int index) {
    return global_seed * 1'000'000 + static_cast<std::uint64_t>(split) * 100'000 + static_cast<std::uint64_t>(index);
}

fs::path Layout::corpus(const std::string& size, const std::string& split) const {
    return root / "instances" / size / split;
}
fs::path Layout::labels(const std::string& size, const std::string& split) const {
    return root / "labels" / size / (split + ".csv");
}
fs::path Layout::smacd(const std::string& size) const { return root / "smacd" / (size + ".csv"); }
fs::path Layout::dataset(const std::string& size, const std::string& split) const {
    return root / "datasets" / size / (split + ".csv");
}
fs::path Layout::models(const std::string& size) const { return root / "models" / size; }
fs::path Layout::selection(const std::string& size) const { return root / "selection" / (size + ".csv"); }
fs::path Layout::reports() const { return root / "reports"; }

std::vector<MkpInstance> load_corpus(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error("corpus directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<MkpInstance> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(read_instance(f));
    if (out.empty()) throw Error("corpus directory has no .txt instances: " + dir.string());
    return out;
}

std::map<std::string, RankVector> load_label_ranks(const fs::path& labels_csv) {
    std::map<std::string, RankVector> out;
    for (const auto& rec : parse_labels_csv(read_file(labels_csv), labels_csv.string())) {
        out[rec.instance_id] = order_to_ranks(rec.order);
    }
    return out;
}

std::vector<fs::path> generate_corpus(const PipelineConfig& config) {
    const Layout layout{config.output_dir};
    const int counts[] = {config.train_count, config.validation_count, config.test_count};
    std::vector<fs::path> written;
    for (auto [p, n] : config.sizes) {
        const auto size = size_key(p, n);
        for (int split = 0; split < 3; ++split) {
            const auto dir = layout.corpus(size, split_name(split));
            if (fs::exists(dir)) {
                for (const auto& e : fs::directory_iterator(dir)) {
                    if (e.path().extension() == ".txt") fs::remove(e.path());
                }
            }
            for (int i = 0; i < counts[split]; ++i) {
                auto inst = generate_instance(instance_seed(config.seed, split, i), p, n, split_name(split));
                auto path = dir / (inst.id + ".txt");
                write_instance(inst, path);
                written.push_back(path);
            }
        }
    }
    return written;
}

namespace {

LabelRecord label_for(const MkpInstance& inst, const TunerConfig& config) {
    const auto inc = tune_instance(inst, config);
    return LabelRecord{inst.id, inc.weights, inc.objective_value, score_order(inst, inc.weights)};
}

}  // namespace

std::vector<LabelRecord> tune_corpus(const std::vector<MkpInstance>& corpus, const TunerConfig& config) {
    std::vector<LabelRecord> out(corpus.size());
    std::vector<std::exception_ptr> errors(corpus.size());
    const long count = static_cast<long>(corpus.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long j = 0; j < count; ++j) {
        try {
            out[j] = label_for(corpus[j], config);
        } catch (...) {
            errors[j] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<LabelRecord> tune_corpus_reference(const std::vector<MkpInstance>& corpus, const TunerConfig& config) {
    std::vector<LabelRecord> out;
    for (const auto& inst : corpus) out.push_back(label_for(inst, config));
    return out;
}

std::vector<TrainedCandidate> train_candidates(const RankingDataset& data, const std::vector<CandidateSpec>& specs) {
    std::vector<TrainedCandidate> out;
    for (const auto& spec : specs) {
        TrainedCandidate t;
        t.spec = spec;
        t.model = train_model(data, spec.kind, spec.features, spec.hyperparams, &t.log);
        out.push_back(std::move(t));
    }
    return out;
}

VariableOrder Method::order(const MkpInstance& instance) const {
    if (has_model) return predict_order(model, instance);
    if (has_weights) return score_order(instance, weights);
    return heuristic_order(instance, heuristic);
}

Method parse_method(const std::string& spec) {
    Method m;
    std::string body = spec;
    std::string label;
    if (auto eq = spec.find('='); eq != std::string::npos) {
        label = spec.substr(0, eq);
        body = spec.substr(eq + 1);
    }
    if (body.starts_with("smacd:")) {
        const fs::path file = body.substr(6);
        m.has_weights = true;
        m.weights = parse_weights_csv(read_file(file), file.string());
        m.label = label.empty() ? "smacd" : label;
    } else if (body.starts_with("ml:")) {
        const fs::path file = body.substr(3);
        m.has_model = true;
        m.model = RankModel::parse(read_file(file), file.string());
        m.label = label.empty() ? "ml" : label;
    } else {
        m.heuristic = body == "max_ratio" ? "max_min-value-by-weight" : body;
        if (body == "smacd" || body == "ml") {
            throw Error("method '" + body + "' needs a file: use " + body + ":<path>");
        }
        // Validate the name now rather than at first use.
        MkpInstance probe;
        probe.p = 1;
        probe.n = 1;
        probe.weights = {1};
        probe.values = {{1}};
        probe.capacity = 1;
        heuristic_order(probe, m.heuristic);
        m.label = label.empty() ? body : label;
    }
    return m;
}

std::vector<MethodRunRecord> evaluate_methods(const std::vector<MkpInstance>& instances,
                                              const std::vector<Method>& methods, const EnumerationOptions& options) {
    std::vector<EvalTask> tasks;
    for (const auto& m : methods) {
        for (const auto& inst : instances) tasks.push_back(EvalTask{&inst, m.order(inst)});
    }
    const auto results = evaluate_batch(tasks, options);
    std::vector<MethodRunRecord> records;
    std::size_t t = 0;
    for (const auto& m : methods) {
        for (const auto& inst : instances) {
            const auto& res = results[t++];
            MethodRunRecord r;
            r.instance_id = inst.id;
            r.size = size_key(inst.p, inst.n);
            r.method = m.label;
            r.solved = res.report.solved;
            r.cost = res.report.enumeration_cost;
            r.checks = res.report.checks;
            r.seconds = res.report.seconds;
            r.stats = res.stats;
            r.intermediate_per_layer = res.report.intermediate_per_layer;
            r.frontier_size = res.report.frontier.size();
            records.push_back(std::move(r));
        }
    }
    return records;
}

ReportFiles write_reports(const std::vector<MethodRunRecord>& records, const fs::path& dir, CostMode mode) {
    ReportFiles f{dir / "records.csv", dir / "table4.csv", dir / "table5.csv", dir / "fig5.csv"};
    write_file_atomic(f.records, records_csv(records, mode));
    write_file_atomic(f.table4, table4_csv(summary_table(records)));
    write_file_atomic(f.table5, table5_csv(relative_to_lex(records)));
    write_file_atomic(f.fig5, cumulative_csv(cumulative_intermediate(records)));
    return f;
}

PipelineSummary run_pipeline(const PipelineConfig& config) {
    config.validate();
    set_threads(config.jobs);
    const Layout layout{config.output_dir};
    TunerConfig tuner = config.tuner;
    tuner.objective = config.cost_mode;
    TunerConfig dataset_tuner = config.dataset_tuner;
    dataset_tuner.objective = config.cost_mode;
    EnumerationOptions options;
    options.cost_mode = config.cost_mode;
    options.check_limit = config.check_limit;

    generate_corpus(config);
    PipelineSummary summary;
    std::vector<Table2Row> table2;

    for (auto [p, n] : config.sizes) {
        const auto size = size_key(p, n);
        std::cerr << "[" << size << "] tuning labels\n";
        const auto train = load_corpus(layout.corpus(size, "train"));
        const auto validation = load_corpus(layout.corpus(size, "validation"));
        const auto test = load_corpus(layout.corpus(size, "test"));

        std::map<std::string, RankVector> train_labels, validation_labels;
        for (const auto& [corpus, split, dst] : {std::tuple{&train, "train", &train_labels},
                                                 std::tuple{&validation, "validation", &validation_labels}}) {
            const auto labels = tune_corpus(*corpus, tuner);
            write_file_atomic(layout.labels(size, split), labels_csv(labels));
            for (const auto& l : labels) (*dst)[l.instance_id] = order_to_ranks(l.order);
        }

        std::cerr << "[" << size << "] tuning dataset weights\n";
        const auto smacd = tune_dataset(train, dataset_tuner);
        write_file_atomic(layout.smacd(size), weights_csv(smacd.weights, smacd.objective_value));

        std::cerr << "[" << size << "] training candidates\n";
        const auto train_ds = build_dataset(train, train_labels);
        write_file_atomic(layout.dataset(size, "train"), dataset_csv(train_ds));
        write_file_atomic(layout.dataset(size, "validation"), dataset_csv(build_dataset(validation, validation_labels)));
        auto trained = train_candidates(train_ds, config.candidates);
        std::vector<NamedModel> named;
        for (const auto& t : trained) {
            write_file_atomic(layout.models(size) / (t.spec.name + ".model"), t.model.serialize());
            write_file_atomic(layout.models(size) / (t.spec.name + ".log.csv"), t.log.csv());
            named.push_back(NamedModel{t.spec.name, t.model});
        }

        std::cerr << "[" << size << "] selecting\n";
        auto selection = select_model(named, validation, validation_labels, options);
        write_file_atomic(layout.selection(size), selection.csv());
        const RankModel* chosen = nullptr;
        for (const auto& nm : named) {
            if (nm.name == selection.winner) chosen = &nm.model;
        }
        write_file_atomic(layout.models(size) / "selected.model", chosen->serialize());
        if (is_tree_model(chosen->kind)) {
            write_file_atomic(layout.reports() / ("importance_" + size + ".csv"),
                              feature_importance_csv(feature_importance(*chosen)));
        }

        std::cerr << "[" << size << "] evaluating\n";
        std::vector<Method> methods;
        for (const auto& name : config.methods) {
            if (name == "smacd") {
                Method m;
                m.label = "smacd";
                m.has_weights = true;
                m.weights = smacd.weights;
                methods.push_back(m);
            } else if (name == "ml") {
                Method m;
                m.label = "ml";
                m.has_model = true;
                m.model = *chosen;
                methods.push_back(m);
            } else {
                methods.push_back(parse_method(name));
            }
        }
        auto records = evaluate_methods(test, methods, options);
        summary.records.insert(summary.records.end(), records.begin(), records.end());

        for (const auto& h : rank_feature_heuristics()) {
            table2.push_back(Table2Row{h, size, ratio_vs_random(test, h, config.k_random, config.seed, config.cost_mode)});
        }
        summary.selections[size] = std::move(selection);
    }

    write_reports(summary.records, layout.reports(), config.cost_mode);
    write_file_atomic(layout.reports() / "table2.csv", table2_csv(table2));
    summary.table4 = summary_table(summary.records);
    summary.table5 = relative_to_lex(summary.records);
    return summary;
}

}  // namespace mobdd
