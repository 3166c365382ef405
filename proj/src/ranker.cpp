#include "mobdd/ranker.hpp"

#include "mobdd/csv.hpp"
#include "mobdd/error.hpp"
#include "mobdd/kernels.hpp"
#include "ranker_internal.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <sstream>

namespace mobdd {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::LinearPointwise: return "linear_pointwise";
        case ModelKind::LinearPairwise: return "linear_pairwise";
        case ModelKind::GbtPointwise: return "gbt_pointwise";
        case ModelKind::GbtPairwise: return "gbt_pairwise";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& s) {
    for (auto k : {ModelKind::LinearPointwise, ModelKind::LinearPairwise, ModelKind::GbtPointwise,
                   ModelKind::GbtPairwise}) {
        if (to_string(k) == s) return k;
    }
    throw Error("unknown model kind '" + s +
                "' (expected linear_pointwise, linear_pairwise, gbt_pointwise or gbt_pairwise)");
}

bool is_tree_model(ModelKind kind) { return kind == ModelKind::GbtPointwise || kind == ModelKind::GbtPairwise; }
bool is_pairwise(ModelKind kind) { return kind == ModelKind::LinearPairwise || kind == ModelKind::GbtPairwise; }

std::string to_string(FeatureSet set) { return set == FeatureSet::Variable ? "variable" : "all"; }

FeatureSet parse_feature_set(const std::string& s) {
    if (s == "variable") return FeatureSet::Variable;
    if (s == "all") return FeatureSet::All;
    throw Error("unknown feature set '" + s + "' (expected variable or all)");
}

std::vector<int> feature_columns(FeatureSet set) {
    std::vector<int> cols(set == FeatureSet::Variable ? kNumVariableFeatures : kNumFeatures);
    std::iota(cols.begin(), cols.end(), 0);
    return cols;
}

std::string Hyperparams::to_string() const {
    std::ostringstream s;
    s << "l2=" << format_real(l2) << " svm_c=" << format_real(svm_c) << " epochs=" << epochs << " rounds=" << rounds
      << " max_depth=" << max_depth << " learning_rate=" << format_real(learning_rate)
      << " lambda=" << format_real(lambda) << " min_child_weight=" << format_real(min_child_weight)
      << " min_split_gain=" << format_real(min_split_gain) << " seed=" << seed;
    return s.str();
}

Hyperparams Hyperparams::parse(const std::string& text) {
    Hyperparams hp;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error("hyperparameter '" + tok + "' is not key=value");
        const auto key = tok.substr(0, eq);
        const auto val = tok.substr(eq + 1);
        const std::string ctx = "hyperparameter " + key;
        if (key == "l2") hp.l2 = parse_real(val, ctx);
        else if (key == "svm_c") hp.svm_c = parse_real(val, ctx);
        else if (key == "epochs") hp.epochs = static_cast<int>(parse_int(val, ctx));
        else if (key == "rounds") hp.rounds = static_cast<int>(parse_int(val, ctx));
        else if (key == "max_depth") hp.max_depth = static_cast<int>(parse_int(val, ctx));
        else if (key == "learning_rate") hp.learning_rate = parse_real(val, ctx);
        else if (key == "lambda") hp.lambda = parse_real(val, ctx);
        else if (key == "min_child_weight") hp.min_child_weight = parse_real(val, ctx);
        else if (key == "min_split_gain") hp.min_split_gain = parse_real(val, ctx);
        else if (key == "seed") hp.seed = static_cast<std::uint64_t>(parse_int(val, ctx));
        else throw Error("unknown hyperparameter '" + key + "'");
    }
    return hp;
}

double Tree::predict(std::span<const double> x) const {
    int id = 0;
    while (nodes[id].feature >= 0) id = x[nodes[id].feature] < nodes[id].threshold ? nodes[id].left : nodes[id].right;
    return nodes[id].leaf;
}

int Tree::depth() const {
    std::vector<int> d(nodes.size(), 0);
    int best = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].feature < 0) continue;
        d[nodes[i].left] = d[nodes[i].right] = d[i] + 1;
        best = std::max(best, d[i] + 1);
    }
    return best;
}

double RankModel::score(std::span<const double> features) const {
    const auto cols = feature_columns(feature_set);
    if (features.size() < cols.size()) throw Error("model expects " + std::to_string(cols.size()) + " features");
    std::vector<double> x(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) x[k] = features[cols[k]];
    if (!is_tree_model(kind)) {
        double s = bias;
        for (std::size_t k = 0; k < x.size(); ++k) s += weights[k] * (x[k] - mean[k]) / scale[k];
        return s;
    }
    double s = base_score;
    for (const auto& t : trees) s += t.predict(x);
    return s;
}

std::size_t RankModel::num_parameters() const {
    if (!is_tree_model(kind)) return weights.size() + 1;
    std::size_t count = 1;
    for (const auto& t : trees) count += t.nodes.size();
    return count;
}

namespace {
constexpr const char* kModelMagic = "mobdd-rank-model";
constexpr int kModelVersion = 1;

void put_vector(std::ostringstream& out, const char* tag, const std::vector<double>& xs) {
    out << tag << ' ' << xs.size();
    for (double x : xs) out << ' ' << format_real(x);
    out << '\n';
}
}  // namespace

std::string RankModel::serialize() const {
    std::ostringstream out;
    out << kModelMagic << ' ' << kModelVersion << '\n';
    out << "kind " << to_string(kind) << '\n';
    out << "features " << to_string(feature_set) << '\n';
    out << "hyperparams " << hyperparams.to_string() << '\n';
    if (!is_tree_model(kind)) {
        put_vector(out, "mean", mean);
        put_vector(out, "scale", scale);
        put_vector(out, "weights", weights);
        out << "bias " << format_real(bias) << '\n';
    } else {
        out << "base_score " << format_real(base_score) << '\n';
        out << "trees " << trees.size() << '\n';
        for (const auto& t : trees) {
            out << "tree " << t.nodes.size() << '\n';
            for (const auto& nd : t.nodes) {
                out << nd.feature << ' ' << format_real(nd.threshold) << ' ' << nd.left << ' ' << nd.right << ' '
                    << format_real(nd.leaf) << '\n';
            }
        }
    }
    return out.str();
}

RankModel RankModel::parse(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::size_t lineno = 0;
    auto next_line = [&]() {
        std::string line;
        if (!std::getline(in, line)) throw ParseError(source, lineno + 1, "unexpected end of model file");
        ++lineno;
        return line;
    };
    auto expect = [&](const std::string& tag) {
        auto line = next_line();
        if (!line.starts_with(tag + " ")) throw ParseError(source, lineno, "expected '" + tag + "'");
        return line.substr(tag.size() + 1);
    };
    auto vec = [&](const std::string& tag) {
        std::istringstream row(expect(tag));
        std::size_t count = 0;
        row >> count;
        std::vector<double> xs(count);
        std::string tok;
        for (auto& x : xs) {
            if (!(row >> tok)) throw ParseError(source, lineno, "short vector '" + tag + "'");
            x = parse_real(tok, source);
        }
        return xs;
    };

    try {
        std::istringstream header(next_line());
        std::string magic;
        int version = 0;
        header >> magic >> version;
        if (magic != kModelMagic) throw ParseError(source, 1, "not a rank model file");
        if (version != kModelVersion) throw ParseError(source, 1, "unsupported model version " + std::to_string(version));

        RankModel m;
        m.kind = parse_model_kind(expect("kind"));
        m.feature_set = parse_feature_set(expect("features"));
        m.hyperparams = Hyperparams::parse(expect("hyperparams"));
        if (!is_tree_model(m.kind)) {
            m.mean = vec("mean");
            m.scale = vec("scale");
            m.weights = vec("weights");
            m.bias = parse_real(expect("bias"), source);
            const auto d = feature_columns(m.feature_set).size();
            if (m.mean.size() != d || m.scale.size() != d || m.weights.size() != d) {
                throw ParseError(source, lineno, "linear model dimensions do not match feature set");
            }
        } else {
            m.base_score = parse_real(expect("base_score"), source);
            const auto count = parse_int(expect("trees"), source);
            for (long long t = 0; t < count; ++t) {
                Tree tree;
                const auto size = parse_int(expect("tree"), source);
                for (long long k = 0; k < size; ++k) {
                    auto cells = split(trim(next_line()), ' ');
                    if (cells.size() != 5) throw ParseError(source, lineno, "tree node needs 5 fields");
                    TreeNode nd;
                    nd.feature = static_cast<int>(parse_int(cells[0], source));
                    nd.threshold = parse_real(cells[1], source);
                    nd.left = static_cast<int>(parse_int(cells[2], source));
                    nd.right = static_cast<int>(parse_int(cells[3], source));
                    nd.leaf = parse_real(cells[4], source);
                    tree.nodes.push_back(nd);
                }
                m.trees.push_back(std::move(tree));
            }
        }
        return m;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(source, lineno, e.what());
    }
}

std::string TrainingLog::csv() const {
    std::string out = "round,loss,satisfied_pair_fraction\n";
    for (const auto& e : entries) {
        out += std::to_string(e.round) + "," + format_real(e.loss) + "," + format_real(e.satisfied_pairs) + "\n";
    }
    return out;
}

namespace detail {

TrainingSet make_training_set(const RankingDataset& data, const std::vector<int>& columns) {
    TrainingSet ts;
    std::vector<std::vector<double>> rows;
    std::size_t skipped = 0;
    for (std::size_t g = 0; g < data.num_groups(); ++g) {
        const auto begin = data.offsets[g];
        const auto end = data.offsets[g + 1];
        if (end - begin < 2) {
            ++skipped;
            continue;
        }
        const int first = static_cast<int>(rows.size());
        for (auto r = begin; r < end; ++r) {
            const auto& row = data.rows[r];
            if (row.label_rank <= 0) throw Error("training row of " + row.instance_id + " has no label");
            std::vector<double> x(columns.size());
            for (std::size_t k = 0; k < columns.size(); ++k) x[k] = row.features[columns[k]];
            rows.push_back(std::move(x));
            ts.label.push_back(row.label_rank);
        }
        const int last = static_cast<int>(rows.size());
        for (int i = first; i < last; ++i) {
            for (int j = first; j < last; ++j) {
                if (ts.label[i] > ts.label[j]) ts.pairs.emplace_back(i, j);
            }
        }
        ts.offsets.push_back(rows.size());
    }
    if (skipped) std::cerr << "warning: skipped " << skipped << " single-row group(s)\n";
    if (rows.empty()) throw Error("training dataset is empty");
    ts.x = gbt::FeatureMatrix::from_rows(rows);
    return ts;
}

double pair_fraction(const TrainingSet& ts, const std::vector<double>& scores) {
    if (ts.pairs.empty()) return 1.0;
    std::size_t ok = 0;
    for (const auto& [hi, lo] : ts.pairs) ok += scores[hi] > scores[lo];
    return static_cast<double>(ok) / static_cast<double>(ts.pairs.size());
}

}  // namespace detail

namespace {

RankModel train_with(const RankingDataset& data, ModelKind kind, FeatureSet features, const Hyperparams& hp,
                     TrainingLog* log) {
    if (data.rows.empty()) throw Error("training dataset is empty");
    RankModel model;
    model.kind = kind;
    model.feature_set = features;
    model.hyperparams = hp;
    const auto ts = detail::make_training_set(data, feature_columns(features));
    switch (kind) {
        case ModelKind::LinearPointwise: detail::train_linear_pointwise(model, ts, log); break;
        case ModelKind::LinearPairwise: detail::train_linear_pairwise(model, ts, log); break;
        case ModelKind::GbtPointwise: detail::train_gbt_pointwise(model, ts, log); break;
        case ModelKind::GbtPairwise: detail::train_gbt_pairwise(model, ts, log); break;
    }
    return model;
}

}  // namespace

RankModel train_pointwise(const RankingDataset& data, ModelKind kind, FeatureSet features, const Hyperparams& hp,
                          TrainingLog* log) {
    if (is_pairwise(kind)) throw Error("train_pointwise: " + to_string(kind) + " is a pairwise kind");
    return train_with(data, kind, features, hp, log);
}

RankModel train_pairwise(const RankingDataset& data, ModelKind kind, FeatureSet features, const Hyperparams& hp,
                         TrainingLog* log) {
    if (!is_pairwise(kind)) throw Error("train_pairwise: " + to_string(kind) + " is a pointwise kind");
    return train_with(data, kind, features, hp, log);
}

RankModel train_model(const RankingDataset& data, ModelKind kind, FeatureSet features, const Hyperparams& hp,
                      TrainingLog* log) {
    return train_with(data, kind, features, hp, log);
}

std::vector<double> predict_scores(const RankModel& model, const std::vector<FeatureRow>& rows) {
    std::vector<double> s;
    s.reserve(rows.size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.features.size()) != kNumFeatures) {
            throw Error("predict: feature row has " + std::to_string(r.features.size()) + " columns, expected " +
                        std::to_string(kNumFeatures));
        }
        s.push_back(model.score(r.features));
    }
    return s;
}

VariableOrder order_from_scores(const std::vector<double>& scores) { return order_by_descending(scores); }

VariableOrder predict_order(const RankModel& model, const MkpInstance& instance) {
    return order_from_scores(predict_scores(model, featurize(instance)));
}

double kendall_tau(const RankVector& predicted, const RankVector& label) {
    if (predicted.size() != label.size()) throw Error("kendall_tau: length mismatch");
    const int n = predicted.size();
    if (n < 2) throw Error("kendall_tau: needs at least two items");
    long long concordant = 0, discordant = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const long long s = static_cast<long long>(predicted.ranks[i] - predicted.ranks[j]) *
                                (label.ranks[i] - label.ranks[j]);
            if (s > 0) ++concordant;
            else if (s < 0) ++discordant;
        }
    }
    return static_cast<double>(concordant - discordant) / (static_cast<double>(n) * (n - 1) / 2.0);
}

double satisfied_pair_fraction(const RankingDataset& data, const std::vector<double>& scores) {
    std::size_t ok = 0, total = 0;
    for (std::size_t g = 0; g < data.num_groups(); ++g) {
        for (auto i = data.offsets[g]; i < data.offsets[g + 1]; ++i) {
            for (auto j = data.offsets[g]; j < data.offsets[g + 1]; ++j) {
                if (data.rows[i].label_rank > data.rows[j].label_rank) {
                    ++total;
                    ok += scores[i] > scores[j];
                }
            }
        }
    }
    return total ? static_cast<double>(ok) / static_cast<double>(total) : 1.0;
}

double mean_kendall_tau(const RankingDataset& data, const std::vector<double>& scores) {
    double sum = 0;
    std::size_t groups = 0;
    for (std::size_t g = 0; g < data.num_groups(); ++g) {
        const auto b = data.offsets[g];
        const auto n = data.group_size(g);
        if (n < 2) continue;
        ++groups;
        std::vector<double> s(scores.begin() + static_cast<std::ptrdiff_t>(b),
                              scores.begin() + static_cast<std::ptrdiff_t>(b + n));
        RankVector label;
        bool constant = true;
        for (std::size_t i = 0; i < n; ++i) {
            label.ranks.push_back(data.rows[b + i].label_rank);
            constant = constant && label.ranks[i] == label.ranks[0];
        }
        if (constant || !is_permutation(label.ranks, 1)) continue;
        sum += kendall_tau(order_to_ranks(order_from_scores(s)), label);
    }
    return groups ? sum / static_cast<double>(groups) : 0.0;
}

SelectionReport select_model(const std::vector<NamedModel>& candidates, const std::vector<MkpInstance>& validation,
                             const std::map<std::string, RankVector>& validation_labels,
                             const EnumerationOptions& options) {
    if (candidates.empty()) throw Error("select_model: no candidate models");
    if (validation.empty()) throw Error("select_model: empty validation set");
    for (const auto& inst : validation) {
        if (!validation_labels.count(inst.id)) throw Error("select_model: no label for validation instance " + inst.id);
    }
    const auto features = featurize_corpus(validation);

    SelectionReport report;
    for (const auto& c : candidates) {
        CandidateResult r;
        r.name = c.name;
        r.kind = c.model.kind;
        r.num_parameters = c.model.num_parameters();
        double tau = 0;
        for (std::size_t j = 0; j < validation.size(); ++j) {
            const auto order = order_from_scores(predict_scores(c.model, features[j]));
            tau += validation[j].n >= 2 ? kendall_tau(order_to_ranks(order), validation_labels.at(validation[j].id)) : 0.0;
        }
        r.mean_tau = tau / static_cast<double>(validation.size());
        report.candidates.push_back(r);
    }

    // Step 1: per class, highest mean tau; ties prefer fewer parameters, then name.
    std::map<std::string, std::size_t> class_best;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        const auto& r = report.candidates[i];
        auto [it, fresh] = class_best.emplace(to_string(r.kind), i);
        if (fresh) continue;
        const auto& cur = report.candidates[it->second];
        if (r.mean_tau > cur.mean_tau ||
            (r.mean_tau == cur.mean_tau &&
             std::tie(r.num_parameters, r.name) < std::tie(cur.num_parameters, cur.name))) {
            it->second = i;
        }
    }

    // Step 2: class winners compete on mean enumeration cost.
    std::size_t winner = class_best.begin()->second;
    bool first = true;
    for (const auto& [cls, idx] : class_best) {
        auto& r = report.candidates[idx];
        r.class_winner = true;
        std::vector<EvalTask> tasks;
        for (std::size_t j = 0; j < validation.size(); ++j) {
            tasks.push_back(EvalTask{&validation[j], order_from_scores(predict_scores(candidates[idx].model, features[j]))});
        }
        const auto results = evaluate_batch(tasks, options);
        double cost = 0;
        for (const auto& res : results) cost += res.report.enumeration_cost;
        r.mean_cost = cost / static_cast<double>(results.size());

        const auto& w = report.candidates[winner];
        if (first || r.mean_cost < w.mean_cost ||
            (r.mean_cost == w.mean_cost && r.num_parameters < w.num_parameters)) {
            winner = idx;
        }
        first = false;
    }
    report.winner = report.candidates[winner].name;
    report.winner_cost = report.candidates[winner].mean_cost;
    return report;
}

std::string SelectionReport::csv() const {
    std::string out = "name,kind,num_parameters,mean_tau,class_winner,mean_cost,selected\n";
    for (const auto& c : candidates) {
        out += c.name + "," + to_string(c.kind) + "," + std::to_string(c.num_parameters) + "," +
               format_fixed(c.mean_tau, 6) + "," + (c.class_winner ? "1" : "0") + "," +
               (c.class_winner ? format_fixed(c.mean_cost, 6) : std::string()) + "," + (c.name == winner ? "1" : "0") +
               "\n";
    }
    return out;
}

std::vector<double> feature_importance(const RankModel& model) {
    if (!is_tree_model(model.kind)) throw Error("feature_importance: " + to_string(model.kind) + " is not a tree model");
    const auto cols = feature_columns(model.feature_set);
    std::vector<double> counts(kNumFeatures, 0.0);
    for (const auto& t : model.trees) {
        for (const auto& nd : t.nodes) {
            if (nd.feature >= 0) counts[cols[nd.feature]] += 1.0;
        }
    }
    const double top = *std::max_element(counts.begin(), counts.end());
    if (top > 0) {
        for (auto& c : counts) c /= top;
    }
    return counts;
}

std::string feature_importance_csv(const std::vector<double>& importance) {
    std::string out = "feature,importance\n";
    const auto& names = feature_names();
    for (std::size_t k = 0; k < importance.size(); ++k) out += names[k] + "," + format_fixed(importance[k], 6) + "\n";
    return out;
}

}  // namespace mobdd
