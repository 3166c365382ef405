#include "mobdd/metrics.hpp"

#include "mobdd/csv.hpp"
#include "mobdd/error.hpp"
#include "mobdd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace mobdd {

std::string size_key(int p, int n) { return std::to_string(p) + "x" + std::to_string(n); }

double shifted_gmean(const std::vector<double>& values, double shift) {
    if (values.empty()) throw Error("shifted_gmean: empty input");
    if (!(shift > 0)) throw Error("shifted_gmean: shift must be positive");
    double acc = 0;
    for (double v : values) {
        if (v < 0) throw Error("shifted_gmean: negative value");
        acc += std::log(v + shift);
    }
    return std::exp(acc / static_cast<double>(values.size())) - shift;
}

double ratio_vs_random(const std::vector<MkpInstance>& instances, const std::string& heuristic, int k_random,
                       std::uint64_t seed, CostMode mode) {
    if (k_random < 1) throw Error("ratio_vs_random: k_random must be >= 1");
    if (instances.empty()) throw Error("ratio_vs_random: no instances");
    std::vector<EvalTask> tasks;
    for (const auto& inst : instances) {
        tasks.push_back(EvalTask{&inst, heuristic_order(inst, heuristic)});
        for (int r = 0; r < k_random; ++r) tasks.push_back(EvalTask{&inst, random_order(inst.n, seed + r)});
    }
    EnumerationOptions opts;
    opts.cost_mode = mode;
    const auto results = evaluate_batch(tasks, opts);

    double heur = 0, rand = 0;
    std::size_t t = 0;
    for (std::size_t j = 0; j < instances.size(); ++j) {
        heur += results[t++].report.enumeration_cost;
        double mean_random = 0;
        for (int r = 0; r < k_random; ++r) mean_random += results[t++].report.enumeration_cost;
        rand += mean_random / k_random;
    }
    return heur / rand;
}

namespace {

using SizeMethod = std::pair<std::string, std::string>;

/// Methods in first-appearance order within each size, sizes in first-appearance order.
std::vector<SizeMethod> groups_in_order(const std::vector<MethodRunRecord>& records) {
    std::vector<SizeMethod> out;
    std::set<SizeMethod> seen;
    for (const auto& r : records) {
        SizeMethod key{r.size, r.method};
        if (seen.insert(key).second) out.push_back(key);
    }
    std::stable_sort(out.begin(), out.end(), [&](const SizeMethod& a, const SizeMethod& b) {
        auto first = [&](const std::string& size) {
            for (std::size_t i = 0; i < out.size(); ++i) {
                if (out[i].first == size) return i;
            }
            return out.size();
        };
        return first(a.first) < first(b.first);
    });
    return out;
}

double mean(const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

}  // namespace

std::vector<Table4Row> summary_table(const std::vector<MethodRunRecord>& records, double shift) {
    std::vector<Table4Row> rows;
    for (const auto& [size, method] : groups_in_order(records)) {
        std::vector<double> costs;
        for (const auto& r : records) {
            if (r.size == size && r.method == method && r.solved) costs.push_back(r.cost);
        }
        Table4Row row{size, method, costs.size(), 0, 0, 0};
        if (!costs.empty()) {
            row.gmean = shifted_gmean(costs, shift);
            row.min = *std::min_element(costs.begin(), costs.end());
            row.max = *std::max_element(costs.begin(), costs.end());
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<Table5Row> relative_to_lex(const std::vector<MethodRunRecord>& records, double shift) {
    std::map<std::pair<std::string, std::string>, const MethodRunRecord*> lex;  // (size, instance) -> record
    for (const auto& r : records) {
        if (r.method == "lex") lex[{r.size, r.instance_id}] = &r;
    }
    std::vector<Table5Row> rows;
    for (const auto& [size, method] : groups_in_order(records)) {
        std::vector<double> nodes, width, checks, cost, lnodes, lwidth, lchecks, lcost;
        bool any = false;
        for (const auto& r : records) {
            if (r.size != size || r.method != method) continue;
            any = true;
            if (!r.solved) continue;
            auto it = lex.find({r.size, r.instance_id});
            if (it == lex.end()) throw Error("relative_to_lex: no lex baseline for instance " + r.instance_id);
            const auto& base = *it->second;
            if (!base.solved) continue;
            nodes.push_back(static_cast<double>(r.stats.num_nodes));
            width.push_back(static_cast<double>(r.stats.width));
            checks.push_back(static_cast<double>(r.checks));
            cost.push_back(r.cost);
            lnodes.push_back(static_cast<double>(base.stats.num_nodes));
            lwidth.push_back(static_cast<double>(base.stats.width));
            lchecks.push_back(static_cast<double>(base.checks));
            lcost.push_back(base.cost);
        }
        if (!any || cost.empty()) continue;
        auto pct = [](double a, double b) { return b == 0 ? (a == 0 ? 100.0 : INFINITY) : 100.0 * a / b; };
        rows.push_back(Table5Row{size, method, pct(mean(nodes), mean(lnodes)), pct(mean(width), mean(lwidth)),
                                 pct(mean(checks), mean(lchecks)),
                                 pct(shifted_gmean(cost, shift), shifted_gmean(lcost, shift))});
    }
    return rows;
}

std::vector<CumulativePoint> cumulative_intermediate(const std::vector<MethodRunRecord>& records) {
    std::vector<CumulativePoint> out;
    for (const auto& [size, method] : groups_in_order(records)) {
        // Instances of one size share n; series of a different length are grouped apart.
        std::map<std::size_t, std::pair<std::vector<double>, int>> by_len;
        for (const auto& r : records) {
            if (r.size != size || r.method != method || !r.solved) continue;
            auto& [acc, count] = by_len[r.intermediate_per_layer.size()];
            acc.resize(r.intermediate_per_layer.size(), 0.0);
            double run = 0;
            for (std::size_t l = 0; l < r.intermediate_per_layer.size(); ++l) {
                run += static_cast<double>(r.intermediate_per_layer[l]);
                acc[l] += run;
            }
            ++count;
        }
        for (const auto& [len, entry] : by_len) {
            const auto& [acc, count] = entry;
            for (std::size_t l = 0; l < len; ++l) {
                out.push_back(CumulativePoint{size, method, static_cast<int>(l + 1), acc[l] / count});
            }
        }
    }
    return out;
}

namespace {

std::string join_ints(const std::vector<long long>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
    return s;
}

std::vector<long long> parse_ints(const std::string& s, const std::string& ctx) {
    std::vector<long long> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(parse_int(tok, ctx));
    return out;
}

}  // namespace

std::string records_csv(const std::vector<MethodRunRecord>& records, CostMode mode) {
    std::string out =
        "instance_id,size,method,solved,cost,checks,seconds,num_nodes,width,frontier_size,nodes_per_layer,"
        "intermediate_per_layer\n";
    for (const auto& r : records) {
        out += r.instance_id + "," + r.size + "," + r.method + "," + (r.solved ? "1" : "0") + "," +
               format_real(r.cost) + "," + std::to_string(r.checks) + "," +
               (mode == CostMode::WallTime ? format_real(r.seconds) : std::string()) + "," +
               std::to_string(r.stats.num_nodes) + "," + std::to_string(r.stats.width) + "," +
               std::to_string(r.frontier_size) + "," + join_ints(r.stats.nodes_per_layer) + "," +
               join_ints(r.intermediate_per_layer) + "\n";
    }
    return out;
}

std::vector<MethodRunRecord> parse_records_csv(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<MethodRunRecord> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        if (lineno == 1) {
            if (!line.starts_with("instance_id,size,method")) throw ParseError(source, 1, "missing records header");
            continue;
        }
        auto c = split(line, ',');
        if (c.size() != 12) throw ParseError(source, lineno, "expected 12 columns");
        const std::string ctx = source + ":" + std::to_string(lineno);
        MethodRunRecord r;
        r.instance_id = c[0];
        r.size = c[1];
        r.method = c[2];
        r.solved = c[3] == "1";
        r.cost = parse_real(c[4], ctx);
        r.checks = static_cast<std::uint64_t>(parse_int(c[5], ctx));
        r.seconds = trim(c[6]).empty() ? 0.0 : parse_real(c[6], ctx);
        r.stats.num_nodes = parse_int(c[7], ctx);
        r.stats.width = parse_int(c[8], ctx);
        r.frontier_size = static_cast<std::size_t>(parse_int(c[9], ctx));
        r.stats.nodes_per_layer = parse_ints(c[10], ctx);
        r.intermediate_per_layer = parse_ints(c[11], ctx);
        out.push_back(std::move(r));
    }
    return out;
}

std::string table4_csv(const std::vector<Table4Row>& rows) {
    std::string out = "size,method,count,gmean,min,max\n";
    for (const auto& r : rows) {
        out += r.size + "," + r.method + "," + std::to_string(r.count) + "," + format_fixed(r.gmean, 4) + "," +
               format_fixed(r.min, 4) + "," + format_fixed(r.max, 4) + "\n";
    }
    return out;
}

std::string table5_csv(const std::vector<Table5Row>& rows) {
    std::string out = "size,method,nodes_pct,width_pct,checks_pct,gmean_pct\n";
    for (const auto& r : rows) {
        out += r.size + "," + r.method + "," + format_fixed(r.nodes_pct, 2) + "," + format_fixed(r.width_pct, 2) + "," +
               format_fixed(r.checks_pct, 2) + "," + format_fixed(r.gmean_pct, 2) + "\n";
    }
    return out;
}

std::string cumulative_csv(const std::vector<CumulativePoint>& points) {
    std::string out = "size,method,layer,mean_cumulative\n";
    for (const auto& p : points) {
        out += p.size + "," + p.method + "," + std::to_string(p.layer) + "," + format_fixed(p.mean_cumulative, 4) + "\n";
    }
    return out;
}

std::string table2_csv(const std::vector<Table2Row>& rows) {
    std::string out = "heuristic,size,ratio\n";
    for (const auto& r : rows) out += r.heuristic + "," + r.size + "," + format_fixed(r.ratio, 4) + "\n";
    return out;
}

}  // namespace mobdd
