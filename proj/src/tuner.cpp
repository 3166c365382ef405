#include "mobdd/tuner.hpp"

#include "mobdd/csv.hpp"
#include "mobdd/error.hpp"
#include "mobdd/kernels.hpp"

#include <map>
#include <random>
#include <sstream>

namespace mobdd {

void TunerConfig::validate() const {
    if (budget < 1) throw Error("tuner: budget must be >= 1");
    if (!(perturbation_sd > 0)) throw Error("tuner: perturbation_sd must be > 0");
    if (restart_fraction < 0 || restart_fraction > 1) throw Error("tuner: restart_fraction must lie in [0,1]");
    if (seeds.empty()) throw Error("tuner: at least one seed is required");
}

Incumbent search_weights(const WeightsObjective& objective, const TunerConfig& config) {
    config.validate();
    Incumbent best;
    bool have_best = false;
    int evaluation = 0;

    auto record = [&](double value) {
        ++evaluation;
        const double so_far = best.trajectory.empty() ? value : std::min(best.trajectory.back().second, value);
        best.trajectory.emplace_back(evaluation, so_far);
    };

    for (std::uint64_t seed : config.seeds) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_real_distribution<double> box(-1.0, 1.0);
        std::normal_distribution<double> step(0.0, config.perturbation_sd);

        PropertyWeights current = config.warm_start.clipped();
        double current_value = objective(current);
        record(current_value);

        for (int k = 1; k < config.budget; ++k) {
            PropertyWeights cand;
            if (unit(rng) < config.restart_fraction) {
                for (auto& x : cand.w) x = box(rng);
            } else {
                for (int j = 0; j < kNumProperties; ++j) cand.w[j] = current.w[j] + step(rng);
                cand = cand.clipped();
            }
            const double value = objective(cand);
            record(value);
            if (value < current_value) {
                current = cand;
                current_value = value;
            }
        }
        if (!have_best || current_value < best.objective_value) {
            best.weights = current;
            best.objective_value = current_value;
            have_best = true;
        }
    }
    return best;
}

double evaluate_weights(const MkpInstance& instance, const PropertyWeights& pw, CostMode mode) {
    EnumerationOptions opts;
    opts.cost_mode = mode;
    return evaluate_one(instance, score_order(instance, pw), opts).report.enumeration_cost;
}

namespace {

/// Orders repeat often across nearby weights; in checks mode their cost is memoized.
class CostCache {
public:
    explicit CostCache(CostMode mode) : mode_(mode) {}

    const double* find(const VariableOrder& o) const {
        if (mode_ != CostMode::Checks) return nullptr;
        auto it = cache_.find(o.order);
        return it == cache_.end() ? nullptr : &it->second;
    }
    void put(const VariableOrder& o, double v) {
        if (mode_ == CostMode::Checks) cache_.emplace(o.order, v);
    }

private:
    CostMode mode_;
    std::map<std::vector<int>, double> cache_;
};

}  // namespace

Incumbent tune_instance(const MkpInstance& instance, const TunerConfig& config) {
    CostCache cache(config.objective);
    const auto props = property_matrix(instance);
    EnumerationOptions opts;
    opts.cost_mode = config.objective;
    auto objective = [&](const PropertyWeights& pw) {
        const auto order = order_by_descending(variable_scores(props, pw));
        if (const double* hit = cache.find(order)) return *hit;
        const double v = evaluate_one(instance, order, opts).report.enumeration_cost;
        cache.put(order, v);
        return v;
    };
    return search_weights(objective, config);
}

Incumbent tune_dataset(const std::vector<MkpInstance>& instances, const TunerConfig& config) {
    if (instances.empty()) throw Error("tune_dataset: empty instance list");
    std::vector<CostCache> caches(instances.size(), CostCache(config.objective));
    std::vector<PropertyMatrix> props;
    props.reserve(instances.size());
    for (const auto& inst : instances) props.push_back(property_matrix(inst));
    EnumerationOptions opts;
    opts.cost_mode = config.objective;

    auto objective = [&](const PropertyWeights& pw) {
        std::vector<double> costs(instances.size());
        std::vector<EvalTask> pending;
        std::vector<std::size_t> slots;
        for (std::size_t j = 0; j < instances.size(); ++j) {
            auto order = order_by_descending(variable_scores(props[j], pw));
            if (const double* hit = caches[j].find(order)) {
                costs[j] = *hit;
            } else {
                pending.push_back(EvalTask{&instances[j], std::move(order)});
                slots.push_back(j);
            }
        }
        const auto results = evaluate_batch(pending, opts);
        for (std::size_t t = 0; t < results.size(); ++t) {
            costs[slots[t]] = results[t].report.enumeration_cost;
            caches[slots[t]].put(pending[t].order, costs[slots[t]]);
        }
        double sum = 0;
        for (double c : costs) sum += c;
        return sum / static_cast<double>(costs.size());
    };
    return search_weights(objective, config);
}

namespace {

void append_weights(std::string& out, const PropertyWeights& pw) {
    for (double x : pw.w) out += "," + format_real(x);
}

PropertyWeights read_weights(const std::vector<std::string>& cells, std::size_t first, const std::string& ctx) {
    PropertyWeights pw;
    for (int k = 0; k < kNumProperties; ++k) pw.w[k] = parse_real(cells[first + k], ctx);
    return pw;
}

}  // namespace

std::string labels_csv(const std::vector<LabelRecord>& labels) {
    std::string out = "instance_id,w_1,w_2,w_3,w_4,w_5,w_6,w_7,objective_value,order\n";
    for (const auto& l : labels) {
        out += l.instance_id;
        append_weights(out, l.weights);
        out += "," + format_real(l.objective_value) + "," + format_order(l.order) + "\n";
    }
    return out;
}

std::vector<LabelRecord> parse_labels_csv(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::vector<LabelRecord> out;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        if (lineno == 1) {
            if (!line.starts_with("instance_id")) throw ParseError(source, 1, "missing label header");
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() != 10) throw ParseError(source, lineno, "expected 10 columns");
        const std::string ctx = source + ":" + std::to_string(lineno);
        LabelRecord rec;
        rec.instance_id = trim(cells[0]);
        rec.weights = read_weights(cells, 1, ctx);
        rec.objective_value = parse_real(cells[8], ctx);
        try {
            rec.order = parse_order(cells[9]);
        } catch (const Error& e) {
            throw ParseError(source, lineno, e.what());
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::string weights_csv(const PropertyWeights& pw, double objective_value) {
    std::string out = "w_1,w_2,w_3,w_4,w_5,w_6,w_7,objective_value\n";
    std::string row;
    append_weights(row, pw);
    out += row.substr(1) + "," + format_real(objective_value) + "\n";
    return out;
}

PropertyWeights parse_weights_csv(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string header, row;
    std::getline(in, header);
    if (!std::getline(in, row)) throw ParseError(source, 2, "missing weights row");
    auto cells = split(row, ',');
    if (cells.size() < static_cast<std::size_t>(kNumProperties)) throw ParseError(source, 2, "expected 7 weights");
    return read_weights(cells, 0, source + ":2");
}

}  // namespace mobdd
