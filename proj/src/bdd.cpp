#include "mobdd/bdd.hpp"

#include "mobdd/error.hpp"

#include <algorithm>
#include <ostream>

namespace mobdd {

Bdd compile(const MkpInstance& instance, const VariableOrder& order) {
    if (order.size() != instance.n || !is_permutation(order.order, 0)) {
        throw Error("compile: order is not a permutation of the instance variables");
    }
    const int n = instance.n;
    const Value cap = instance.capacity;

    Bdd bdd;
    bdd.n_ = n;
    bdd.p_ = instance.p;
    bdd.order_ = order;
    bdd.layers_.resize(n + 1);
    bdd.one_values_.resize(n);
    bdd.layers_[0].push_back(Bdd::Node{0, -1, -1});

    std::vector<Value> next;
    for (int l = 0; l < n; ++l) {
        const int var = order.order[l];
        const Value w = instance.weights[var];
        auto& cur = bdd.layers_[l];

        auto& val = bdd.one_values_[l];
        val.resize(instance.p);
        for (int k = 0; k < instance.p; ++k) val[k] = instance.value(k, var);

        if (l + 1 == n) {
            // All paths end in the single terminal.
            bdd.layers_[n].push_back(Bdd::Node{0, -1, -1});
            for (auto& node : cur) {
                node.zero = 0;
                node.one = node.state + w <= cap ? 0 : -1;
            }
            break;
        }

        next.clear();
        next.reserve(cur.size() * 2);
        for (const auto& node : cur) next.push_back(node.state);
        const std::size_t zeros = next.size();
        for (const auto& node : cur) {
            if (node.state + w <= cap) next.push_back(node.state + w);
        }
        std::inplace_merge(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(zeros), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());

        auto index_of = [&](Value s) {
            return static_cast<int>(std::lower_bound(next.begin(), next.end(), s) - next.begin());
        };
        for (auto& node : cur) {
            node.zero = index_of(node.state);
            node.one = node.state + w <= cap ? index_of(node.state + w) : -1;
        }
        auto& dst = bdd.layers_[l + 1];
        dst.reserve(next.size());
        for (Value s : next) dst.push_back(Bdd::Node{s, -1, -1});
    }
    return bdd;
}

std::vector<std::vector<Bdd::Arc>> Bdd::incoming(int l) const {
    std::vector<std::vector<Arc>> in(layers_[l + 1].size());
    const auto& cur = layers_[l];
    for (int u = 0; u < static_cast<int>(cur.size()); ++u) {
        in[cur[u].zero].push_back(Arc{l, u, cur[u].zero, 0});
        if (cur[u].one >= 0) in[cur[u].one].push_back(Arc{l, u, cur[u].one, 1});
    }
    return in;
}

double Bdd::count_paths() const {
    std::vector<double> cur(1, 1.0);
    for (int l = 0; l < n_; ++l) {
        std::vector<double> nxt(layers_[l + 1].size(), 0.0);
        for (std::size_t u = 0; u < layers_[l].size(); ++u) {
            const auto& node = layers_[l][u];
            nxt[node.zero] += cur[u];
            if (node.one >= 0) nxt[node.one] += cur[u];
        }
        cur = std::move(nxt);
    }
    return cur.empty() ? 0.0 : cur[0];
}

void Bdd::dump(std::ostream& out) const {
    for (int l = 0; l <= n_; ++l) {
        for (const auto& node : layers_[l]) out << l + 1 << ' ' << node.state << '\n';
    }
    for (int l = 0; l < n_; ++l) {
        const auto& next = layers_[l + 1];
        for (const auto& node : layers_[l]) {
            out << l + 1 << ' ' << node.state << " 0 " << next[node.zero].state;
            for (int k = 0; k < p_; ++k) out << " 0";
            out << '\n';
            if (node.one >= 0) {
                out << l + 1 << ' ' << node.state << " 1 " << next[node.one].state;
                for (Value v : one_values_[l]) out << ' ' << v;
                out << '\n';
            }
        }
    }
}

BddStats bdd_stats(const Bdd& bdd) {
    BddStats s;
    for (const auto& layer : bdd.layers()) {
        const auto size = static_cast<long long>(layer.size());
        s.nodes_per_layer.push_back(size);
        s.num_nodes += size;
        s.width = std::max(s.width, size);
    }
    return s;
}

}  // namespace mobdd
