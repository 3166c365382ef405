#include "mobdd/pareto.hpp"

#include "mobdd/error.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace mobdd {

CostMode parse_cost_mode(const std::string& s) {
    if (s == "checks") return CostMode::Checks;
    if (s == "time" || s == "wall_time") return CostMode::WallTime;
    throw Error("unknown cost mode '" + s + "' (expected checks or time)");
}

std::string to_string(CostMode mode) { return mode == CostMode::Checks ? "checks" : "time"; }

Relation compare(std::span<const Value> a, std::span<const Value> b, Sense sense) {
    bool a_better = false;
    bool b_better = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == b[j]) continue;
        const bool a_up = a[j] > b[j];
        if (a_up == (sense == Sense::Maximize)) {
            a_better = true;
        } else {
            b_better = true;
        }
        if (a_better && b_better) return Relation::Incomparable;
    }
    if (a_better) return Relation::FirstDominates;
    if (b_better) return Relation::SecondDominates;
    return Relation::Equal;
}

bool dominates(std::span<const Value> a, std::span<const Value> b, Sense sense) {
    if (a.size() != b.size()) throw Error("dominates: vector lengths differ");
    return compare(a, b, sense) == Relation::FirstDominates;
}

void NdFilter::insert(std::span<const Value> candidate, std::uint64_t& checks) {
    scratch_.assign(candidate.begin(), candidate.end());
    insert_scratch(checks);
}

void NdFilter::insert_shifted(std::span<const Value> base, std::span<const Value> shift, std::uint64_t& checks) {
    scratch_.resize(p_);
    for (int j = 0; j < p_; ++j) scratch_[j] = base[j] + shift[j];
    insert_scratch(checks);
}

void NdFilter::insert_scratch(std::uint64_t& checks) {
    const std::span<const Value> cand(scratch_.data(), static_cast<std::size_t>(p_));
    const std::size_t count = size();
    std::size_t write = 0;
    for (std::size_t read = 0; read < count; ++read) {
        Value* s = data_.data() + read * p_;
        ++checks;
        const Relation rel = compare({s, static_cast<std::size_t>(p_)}, cand, sense_);
        if (rel == Relation::FirstDominates || rel == Relation::Equal) {
            // Nothing was removed yet: a survivor dominating the candidate cannot
            // coexist with one the candidate dominates.
            return;
        }
        if (rel == Relation::SecondDominates) continue;
        if (write != read) std::copy(s, s + p_, data_.data() + write * p_);
        ++write;
    }
    data_.resize(write * p_);
    data_.insert(data_.end(), cand.begin(), cand.end());
}

std::vector<ObjectiveVector> nd_filter(const std::vector<ObjectiveVector>& vectors, Sense sense,
                                       std::uint64_t& checks) {
    if (vectors.empty()) return {};
    const int p = static_cast<int>(vectors.front().size());
    NdFilter filter(p, sense);
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != p) throw Error("nd_filter: vector lengths differ");
        filter.insert(v, checks);
    }
    std::vector<ObjectiveVector> out;
    out.reserve(filter.size());
    for (std::size_t i = 0; i < filter.size(); ++i) {
        auto s = filter.at(i);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

ParetoFrontier make_frontier(std::vector<ObjectiveVector> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return ParetoFrontier{std::move(points)};
}

EnumerationReport enumerate_pf(const Bdd& bdd, const MkpInstance& instance, const EnumerationOptions& options) {
    if (bdd.num_vars() != instance.n || bdd.num_objectives() != instance.p) {
        throw Error("enumerate_pf: BDD was not compiled from instance " + instance.id);
    }
    const auto start = std::chrono::steady_clock::now();
    const int n = bdd.num_vars();
    const int p = bdd.num_objectives();

    EnumerationReport report;
    report.intermediate_per_layer.reserve(n);

    std::vector<std::vector<Value>> labels(1, std::vector<Value>(p, 0));
    const std::vector<Value> zero(p, 0);

    for (int l = 0; l < n; ++l) {
        const auto& cur = bdd.layer(l);
        const auto& one_value = bdd.one_arc_value(l);
        std::vector<NdFilter> next(bdd.layer(l + 1).size(), NdFilter(p, options.sense));
        // Tails go from the heaviest state down, so each head sees its 0-arc labels
        // before its 1-arc labels and fuller partial solutions enter the keep-list first.
        for (std::size_t u = cur.size(); u-- > 0;) {
            const auto& lab = labels[u];
            const std::size_t m = lab.size() / p;
            for (int arc = 0; arc < 2; ++arc) {
                const int head = arc == 0 ? cur[u].zero : cur[u].one;
                if (head < 0) continue;
                const auto& shift = arc == 0 ? zero : one_value;
                for (std::size_t i = 0; i < m; ++i) {
                    next[head].insert_shifted({lab.data() + i * p, static_cast<std::size_t>(p)}, shift,
                                              report.checks);
                }
            }
            if (options.check_limit && report.checks > options.check_limit) {
                report.solved = false;
                break;
            }
        }
        if (!report.solved) break;
        labels.clear();
        long long total = 0;
        for (auto& f : next) {
            total += static_cast<long long>(f.size());
            labels.push_back(f.release());
        }
        report.intermediate_per_layer.push_back(total);
    }

    if (report.solved) {
        std::vector<ObjectiveVector> pts;
        const auto& t = labels.front();
        for (std::size_t i = 0; i < t.size() / p; ++i) pts.emplace_back(t.begin() + i * p, t.begin() + (i + 1) * p);
        report.frontier = make_frontier(std::move(pts));
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.enumeration_cost =
        options.cost_mode == CostMode::Checks ? static_cast<double>(report.checks) : report.seconds;
    return report;
}

ParetoFrontier brute_force_pf(const MkpInstance& instance, Sense sense) {
    if (instance.n > kBruteForceMaxVars) {
        throw Error("brute_force_pf: refusing n = " + std::to_string(instance.n) + " (limit " +
                    std::to_string(kBruteForceMaxVars) + ")");
    }
    std::set<ObjectiveVector> images;
    const std::uint64_t total = std::uint64_t{1} << instance.n;
    ObjectiveVector z(instance.p);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Value weight = 0;
        std::fill(z.begin(), z.end(), 0);
        for (int i = 0; i < instance.n; ++i) {
            if (!(mask >> i & 1)) continue;
            weight += instance.weights[i];
            for (int k = 0; k < instance.p; ++k) z[k] += instance.value(k, i);
        }
        if (weight <= instance.capacity) images.insert(z);
    }
    std::uint64_t checks = 0;
    return make_frontier(nd_filter({images.begin(), images.end()}, sense, checks));
}

std::string frontier_csv(const ParetoFrontier& frontier, int p) {
    std::string out;
    for (int k = 0; k < p; ++k) out += (k ? ",z" : "z") + std::to_string(k + 1);
    out += '\n';
    for (const auto& pt : frontier.points) {
        for (std::size_t k = 0; k < pt.size(); ++k) {
            if (k) out += ',';
            out += std::to_string(pt[k]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace mobdd
