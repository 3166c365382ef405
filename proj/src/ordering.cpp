#include "mobdd/ordering.hpp"

#include "mobdd/csv.hpp"
#include "mobdd/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace mobdd {

const std::array<std::string_view, kNumProperties>& property_names() {
    static const std::array<std::string_view, kNumProperties> names = {
        "weight",
        "avg-value",
        "max-value",
        "min-value",
        "avg-value-by-weight",
        "max-value-by-weight",
        "min-value-by-weight",
    };
    return names;
}

PropertyWeights PropertyWeights::min_weight_start() {
    PropertyWeights pw;
    pw.w[static_cast<int>(Property::Weight)] = -1.0;
    return pw;
}

PropertyWeights PropertyWeights::clipped() const {
    PropertyWeights out = *this;
    for (auto& x : out.w) x = std::clamp(x, -1.0, 1.0);
    return out;
}

double PropertyMatrix::column_sum(int k) const {
    double s = 0;
    for (int i = 0; i < n; ++i) s += (*this)(i, k);
    return s;
}

PropertyMatrix property_matrix(const MkpInstance& instance) {
    PropertyMatrix m;
    m.n = instance.n;
    m.data.resize(static_cast<std::size_t>(instance.n) * kNumProperties);
    for (int i = 0; i < instance.n; ++i) {
        double sum = 0;
        Value hi = instance.value(0, i);
        Value lo = hi;
        for (int k = 0; k < instance.p; ++k) {
            Value a = instance.value(k, i);
            sum += static_cast<double>(a);
            hi = std::max(hi, a);
            lo = std::min(lo, a);
        }
        const double w = static_cast<double>(instance.weights[i]);
        const double avg = sum / instance.p;
        double* row = &m.data[static_cast<std::size_t>(i) * kNumProperties];
        row[0] = w;
        row[1] = avg;
        row[2] = static_cast<double>(hi);
        row[3] = static_cast<double>(lo);
        row[4] = avg / w;
        row[5] = static_cast<double>(hi) / w;
        row[6] = static_cast<double>(lo) / w;
    }
    return m;
}

VariableOrder order_by_descending(const std::vector<double>& keys) {
    VariableOrder o;
    o.order.resize(keys.size());
    std::iota(o.order.begin(), o.order.end(), 0);
    std::stable_sort(o.order.begin(), o.order.end(), [&](int a, int b) { return keys[a] > keys[b]; });
    return o;
}

std::vector<double> variable_scores(const PropertyMatrix& props, const PropertyWeights& pw) {
    std::array<double, kNumProperties> sums{};
    for (int k = 0; k < kNumProperties; ++k) sums[k] = props.column_sum(k);
    std::vector<double> s(props.n, 0.0);
    for (int i = 0; i < props.n; ++i) {
        double acc = 0;
        for (int k = 0; k < kNumProperties; ++k) acc += pw.w[k] * (props(i, k) / sums[k]);
        s[i] = acc;
    }
    return s;
}

VariableOrder score_order(const MkpInstance& instance, const PropertyWeights& pw) {
    return order_by_descending(variable_scores(property_matrix(instance), pw));
}

const std::vector<std::string>& rank_feature_heuristics() {
    static const std::vector<std::string> names = {
        "max_weight",
        "min_weight",
        "max_avg-value",
        "min_avg-value",
        "max_max-value",
        "min_max-value",
        "max_min-value",
        "min_min-value",
        "max_avg-value-by-weight",
        "max_max-value-by-weight",
    };
    return names;
}

std::vector<std::string> heuristic_names() {
    auto names = rank_feature_heuristics();
    names.push_back("lex");
    names.push_back("random:<seed>");
    names.push_back("max_min-value-by-weight");
    return names;
}

VariableOrder lex_order(int n) {
    VariableOrder o;
    o.order.resize(n);
    std::iota(o.order.begin(), o.order.end(), 0);
    return o;
}

VariableOrder random_order(int n, std::uint64_t seed) {
    VariableOrder o = lex_order(n);
    std::mt19937_64 rng(seed);
    // Explicit Fisher-Yates: std::shuffle's draw pattern is library-specific.
    for (int i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<int> pick(0, i);
        std::swap(o.order[i], o.order[pick(rng)]);
    }
    return o;
}

VariableOrder heuristic_order(const MkpInstance& instance, std::string_view name) {
    if (name == "lex") return lex_order(instance.n);
    if (name == "random" || name.starts_with("random:")) {
        std::uint64_t seed = 0;
        if (name.size() > 7) seed = static_cast<std::uint64_t>(parse_int(std::string(name.substr(7)), "random seed"));
        return random_order(instance.n, seed);
    }
    bool descending;
    std::string_view prop;
    if (name.starts_with("max_")) {
        descending = true;
        prop = name.substr(4);
    } else if (name.starts_with("min_")) {
        descending = false;
        prop = name.substr(4);
    } else {
        prop = {};
        descending = false;
    }
    const auto& names = property_names();
    auto it = std::find(names.begin(), names.end(), prop);
    const std::string full(name);
    const auto& listed = heuristic_names();
    bool known = it != names.end() &&
                 (std::find(listed.begin(), listed.end(), full) != listed.end());
    if (!known) {
        std::string msg = "unknown ordering '" + full + "'; valid names:";
        for (const auto& n : listed) msg += " " + n;
        throw Error(msg);
    }
    const int k = static_cast<int>(it - names.begin());
    auto props = property_matrix(instance);
    std::vector<double> keys(instance.n);
    for (int i = 0; i < instance.n; ++i) keys[i] = descending ? props(i, k) : -props(i, k);
    return order_by_descending(keys);
}

bool is_permutation(const std::vector<int>& xs, int base) {
    std::vector<char> seen(xs.size(), 0);
    for (int x : xs) {
        const long idx = static_cast<long>(x) - base;
        if (idx < 0 || idx >= static_cast<long>(xs.size()) || seen[idx]) return false;
        seen[idx] = 1;
    }
    return true;
}

RankVector order_to_ranks(const VariableOrder& order) {
    if (!is_permutation(order.order, 0)) throw Error("order_to_ranks: input is not a permutation");
    const int n = order.size();
    RankVector r;
    r.ranks.resize(n);
    for (int pos = 0; pos < n; ++pos) r.ranks[order.order[pos]] = n - pos;
    return r;
}

VariableOrder ranks_to_order(const RankVector& ranks) {
    if (!is_permutation(ranks.ranks, 1)) throw Error("ranks_to_order: input is not a permutation of 1..n");
    const int n = ranks.size();
    VariableOrder o;
    o.order.resize(n);
    for (int i = 0; i < n; ++i) o.order[n - ranks.ranks[i]] = i;
    return o;
}

std::string format_order(const VariableOrder& order) {
    std::string s;
    for (std::size_t k = 0; k < order.order.size(); ++k) {
        if (k) s += ' ';
        s += std::to_string(order.order[k] + 1);
    }
    return s;
}

VariableOrder parse_order(const std::string& text) {
    std::istringstream ss(text);
    VariableOrder o;
    std::string tok;
    while (ss >> tok) o.order.push_back(static_cast<int>(parse_int(tok, "order")) - 1);
    if (!is_permutation(o.order, 0)) throw Error("order '" + text + "' is not a permutation of 1..n");
    return o;
}

}  // namespace mobdd
