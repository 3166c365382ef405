// Command-line front end: one subcommand per pipeline stage.

#include "mobdd/bdd.hpp"
#include "mobdd/csv.hpp"
#include "mobdd/error.hpp"
#include "mobdd/features.hpp"
#include "mobdd/kernels.hpp"
#include "mobdd/metrics.hpp"
#include "mobdd/pareto.hpp"
#include "mobdd/pipeline.hpp"
#include "mobdd/ranker.hpp"
#include "mobdd/tuner.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace mobdd;

namespace {

PipelineConfig config_or_default(const std::string& path) {
    return path.empty() ? PipelineConfig{} : load_config(path);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    for (auto& part : split(s, sep)) {
        auto t = trim(part);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

VariableOrder resolve_order(const MkpInstance& inst, const std::string& spec) {
    if (fs::is_regular_file(spec)) {
        auto order = parse_order(read_file(spec));
        if (order.size() != inst.n) throw Error("order file " + spec + " does not match n = " + std::to_string(inst.n));
        return order;
    }
    return parse_method(spec).order(inst);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Pareto frontiers of multiobjective knapsacks via decision diagrams, with learned variable orderings"};
    app.require_subcommand(1);
    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (0 = OpenMP default)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate instance corpora per size and split");
    std::string gen_config, gen_out;
    std::uint64_t gen_seed = 0;
    bool gen_seed_set = false;
    gen->add_option("--config", gen_config, "pipeline config (JSON)");
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--seed", gen_seed, "global seed")->each([&](const std::string&) { gen_seed_set = true; });

    // solve
    auto* solve = app.add_subcommand("solve", "compile one instance and enumerate its frontier");
    std::string solve_path, solve_order = "lex", solve_cost = "checks", solve_frontier, solve_dump;
    solve->add_option("instance", solve_path, "instance file")->required();
    solve->add_option("--order", solve_order, "ordering name, method spec, or file with a 1-based order");
    solve->add_option("--cost", solve_cost, "checks | time");
    solve->add_option("--frontier", solve_frontier, "write the frontier CSV here instead of stdout");
    solve->add_option("--dump", solve_dump, "write the BDD node/arc dump here");

    // tune
    auto* tune = app.add_subcommand("tune", "black-box search for property weights");
    std::string tune_mode = "instance", tune_corpus, tune_out, tune_config;
    int tune_budget = 0;
    std::vector<std::uint64_t> tune_seeds;
    tune->add_option("--mode", tune_mode, "instance | dataset")->check(CLI::IsMember({"instance", "dataset"}));
    tune->add_option("--corpus", tune_corpus, "directory of instance files")->required();
    tune->add_option("--out", tune_out, "label CSV (instance) or weights CSV (dataset)")->required();
    tune->add_option("--config", tune_config, "pipeline config supplying tuner settings");
    tune->add_option("--budget", tune_budget, "evaluations per seed");
    tune->add_option("--seeds", tune_seeds, "tuner seeds");

    // featurize
    auto* feat = app.add_subcommand("featurize", "emit the ranking dataset CSV");
    std::string feat_corpus, feat_labels, feat_out;
    feat->add_option("--corpus", feat_corpus)->required();
    feat->add_option("--labels", feat_labels, "label CSV; omit for an unlabeled dataset");
    feat->add_option("--out", feat_out)->required();

    // train
    auto* train = app.add_subcommand("train", "train ranking models over a hyperparameter grid");
    std::string train_data, train_kind, train_features, train_grid, train_out;
    train->add_option("--dataset", train_data)->required();
    train->add_option("--kind", train_kind, "linear_pointwise | linear_pairwise | gbt_pointwise | gbt_pairwise")->required();
    train->add_option("--features", train_features, "variable | all (default: variable for linear, all for trees)");
    train->add_option("--grid", train_grid, "';'-separated hyperparameter sets, e.g. \"max_depth=3;max_depth=6\"");
    train->add_option("--out-dir", train_out)->required();

    // select
    auto* sel = app.add_subcommand("select", "two-step model selection on a validation corpus");
    std::vector<std::string> sel_models;
    std::string sel_corpus, sel_labels, sel_out, sel_cost = "checks";
    sel->add_option("--models", sel_models, "model files")->required();
    sel->add_option("--corpus", sel_corpus)->required();
    sel->add_option("--labels", sel_labels)->required();
    sel->add_option("--out", sel_out, "selection report CSV")->required();
    sel->add_option("--cost", sel_cost, "checks | time");

    // eval
    auto* ev = app.add_subcommand("eval", "run ordering methods on a test corpus and write report tables");
    std::string ev_corpus, ev_methods = "lex,min_weight,max_ratio", ev_out, ev_cost = "checks";
    std::uint64_t ev_limit = 0;
    ev->add_option("--corpus", ev_corpus)->required();
    ev->add_option("--methods", ev_methods, "comma list: lex,min_weight,max_ratio,smacd:<file>,ml:<file>,...");
    ev->add_option("--out-dir", ev_out)->required();
    ev->add_option("--cost", ev_cost, "checks | time");
    ev->add_option("--check-limit", ev_limit, "mark runs unsolved past this many checks (0 = none)");

    // report
    auto* rep = app.add_subcommand("report", "aggregate a records CSV into report tables");
    std::string rep_records, rep_out;
    rep->add_option("--records", rep_records)->required();
    rep->add_option("--out-dir", rep_out)->required();

    // ratios
    auto* rat = app.add_subcommand("ratios", "heuristic vs random ordering cost ratios");
    std::string rat_corpus, rat_out, rat_heur, rat_cost = "checks";
    int rat_k = 5;
    std::uint64_t rat_seed = 0;
    rat->add_option("--corpus", rat_corpus)->required();
    rat->add_option("--out", rat_out)->required();
    rat->add_option("--heuristics", rat_heur, "comma list (default: the ten property heuristics)");
    rat->add_option("--k", rat_k, "random orders per instance");
    rat->add_option("--seed", rat_seed);
    rat->add_option("--cost", rat_cost, "checks | time");

    // importance
    auto* imp = app.add_subcommand("importance", "split-count feature importance of a tree model");
    std::string imp_model, imp_out;
    imp->add_option("--model", imp_model)->required();
    imp->add_option("--out", imp_out)->required();

    // pipeline
    auto* pipe = app.add_subcommand("pipeline", "run every stage end to end");
    std::string pipe_config, pipe_out;
    pipe->add_option("--config", pipe_config, "pipeline config (JSON)");
    pipe->add_option("--out", pipe_out, "output directory (overrides config)");

    CLI11_PARSE(app, argc, argv);
    set_threads(jobs);

    try {
        if (gen->parsed()) {
            auto cfg = config_or_default(gen_config);
            if (!gen_out.empty()) cfg.output_dir = gen_out;
            if (gen_seed_set) cfg.seed = gen_seed;
            const auto files = generate_corpus(cfg);
            std::cout << "wrote " << files.size() << " instances under " << cfg.output_dir.string() << "\n";
        } else if (solve->parsed()) {
            const auto inst = read_instance(solve_path);
            const auto order = resolve_order(inst, solve_order);
            const auto bdd = compile(inst, order);
            EnumerationOptions opts;
            opts.cost_mode = parse_cost_mode(solve_cost);
            const auto report = enumerate_pf(bdd, inst, opts);
            const auto stats = bdd_stats(bdd);
            const auto csv = frontier_csv(report.frontier, inst.p);
            if (!solve_dump.empty()) {
                std::ostringstream d;
                bdd.dump(d);
                write_file_atomic(solve_dump, d.str());
            }
            if (solve_frontier.empty()) {
                std::cout << csv;
            } else {
                write_file_atomic(solve_frontier, csv);
            }
            std::cerr << "order: " << format_order(order) << "\n"
                      << "nodes: " << stats.num_nodes << " width: " << stats.width
                      << " frontier: " << report.frontier.size() << " checks: " << report.checks
                      << " seconds: " << report.seconds << "\n";
        } else if (tune->parsed()) {
            auto cfg = config_or_default(tune_config);
            TunerConfig tc = tune_mode == "instance" ? cfg.tuner : cfg.dataset_tuner;
            tc.objective = cfg.cost_mode;
            if (tune_budget > 0) tc.budget = tune_budget;
            if (!tune_seeds.empty()) tc.seeds = tune_seeds;
            const auto corpus = load_corpus(tune_corpus);
            if (tune_mode == "instance") {
                write_file_atomic(tune_out, labels_csv(mobdd::tune_corpus(corpus, tc)));
            } else {
                const auto inc = tune_dataset(corpus, tc);
                write_file_atomic(tune_out, weights_csv(inc.weights, inc.objective_value));
            }
        } else if (feat->parsed()) {
            const auto corpus = load_corpus(feat_corpus);
            RankingDataset ds;
            if (feat_labels.empty()) {
                for (auto& g : featurize_corpus(corpus)) ds.add_group(std::move(g));
            } else {
                ds = build_dataset(corpus, load_label_ranks(feat_labels));
            }
            write_file_atomic(feat_out, dataset_csv(ds));
        } else if (train->parsed()) {
            const auto ds = parse_dataset_csv(read_file(train_data), train_data);
            const auto kind = parse_model_kind(train_kind);
            const auto features = train_features.empty()
                                      ? (is_tree_model(kind) ? FeatureSet::All : FeatureSet::Variable)
                                      : parse_feature_set(train_features);
            auto grid = split_list(train_grid, ';');
            if (grid.empty()) grid.emplace_back();
            std::vector<CandidateSpec> specs;
            for (std::size_t g = 0; g < grid.size(); ++g) {
                specs.push_back(CandidateSpec{to_string(kind) + "_" + std::to_string(g), kind, features,
                                              Hyperparams::parse(grid[g])});
            }
            for (const auto& t : train_candidates(ds, specs)) {
                write_file_atomic(fs::path(train_out) / (t.spec.name + ".model"), t.model.serialize());
                write_file_atomic(fs::path(train_out) / (t.spec.name + ".log.csv"), t.log.csv());
                std::cout << t.spec.name << " " << t.spec.hyperparams.to_string() << "\n";
            }
        } else if (sel->parsed()) {
            std::vector<NamedModel> named;
            for (const auto& m : sel_models) named.push_back(NamedModel{fs::path(m).stem().string(), RankModel::parse(read_file(m), m)});
            EnumerationOptions opts;
            opts.cost_mode = parse_cost_mode(sel_cost);
            const auto report = select_model(named, load_corpus(sel_corpus), load_label_ranks(sel_labels), opts);
            write_file_atomic(sel_out, report.csv());
            std::cout << "selected " << report.winner << "\n";
        } else if (ev->parsed()) {
            std::vector<Method> methods;
            for (const auto& m : split_list(ev_methods, ',')) methods.push_back(parse_method(m));
            EnumerationOptions opts;
            opts.cost_mode = parse_cost_mode(ev_cost);
            opts.check_limit = ev_limit;
            const auto records = evaluate_methods(load_corpus(ev_corpus), methods, opts);
            const auto files = write_reports(records, ev_out, opts.cost_mode);
            std::cout << "wrote " << files.records.string() << "\n";
        } else if (rep->parsed()) {
            const auto records = parse_records_csv(read_file(rep_records), rep_records);
            write_file_atomic(fs::path(rep_out) / "table4.csv", table4_csv(summary_table(records)));
            write_file_atomic(fs::path(rep_out) / "table5.csv", table5_csv(relative_to_lex(records)));
            write_file_atomic(fs::path(rep_out) / "fig5.csv", cumulative_csv(cumulative_intermediate(records)));
        } else if (rat->parsed()) {
            const auto corpus = load_corpus(rat_corpus);
            auto heuristics = rat_heur.empty() ? rank_feature_heuristics() : split_list(rat_heur, ',');
            std::vector<Table2Row> rows;
            for (const auto& h : heuristics) {
                const auto name = h == "max_ratio" ? std::string("max_min-value-by-weight") : h;
                rows.push_back(Table2Row{h, size_key(corpus.front().p, corpus.front().n),
                                         ratio_vs_random(corpus, name, rat_k, rat_seed, parse_cost_mode(rat_cost))});
            }
            write_file_atomic(rat_out, table2_csv(rows));
        } else if (imp->parsed()) {
            const auto model = RankModel::parse(read_file(imp_model), imp_model);
            write_file_atomic(imp_out, feature_importance_csv(feature_importance(model)));
        } else if (pipe->parsed()) {
            auto cfg = config_or_default(pipe_config);
            if (!pipe_out.empty()) cfg.output_dir = pipe_out;
            if (jobs > 0) cfg.jobs = jobs;
            const auto summary = run_pipeline(cfg);
            for (const auto& [size, sel_report] : summary.selections) {
                std::cout << size << ": selected " << sel_report.winner << "\n";
            }
            std::cout << table5_csv(summary.table5);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
