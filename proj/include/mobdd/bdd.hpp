#pragma once

#include "mobdd/instance.hpp"
#include "mobdd/ordering.hpp"

#include <iosfwd>
#include <vector>

namespace mobdd {

/// Exact knapsack BDD. Layer l (0-based) decides variable order[l]; layer n holds
/// the single terminal. Node state is the accumulated weight; nodes in a layer
/// are stored in strictly increasing state order.
class Bdd {
public:
    struct Node {
        Value state = 0;
        int zero = -1;  // index in next layer; always present for non-terminal nodes
        int one = -1;   // -1 when the item no longer fits
    };

    struct Arc {
        int tail_layer;
        int tail;
        int head;
        int label;
    };

    int num_vars() const { return n_; }
    int num_objectives() const { return p_; }
    const VariableOrder& order() const { return order_; }
    const std::vector<std::vector<Node>>& layers() const { return layers_; }
    const std::vector<Node>& layer(int l) const { return layers_[l]; }

    /// Value vector carried by the 1-arcs leaving layer l.
    const std::vector<Value>& one_arc_value(int l) const { return one_values_[l]; }

    /// Arcs entering each node of layer l+1, ordered by (tail index, label).
    std::vector<std::vector<Arc>> incoming(int l) const;

    /// Number of root-terminal paths (as double: may exceed 2^64 for large n).
    double count_paths() const;

    void dump(std::ostream& out) const;

    friend Bdd compile(const MkpInstance& instance, const VariableOrder& order);

private:
    int n_ = 0;
    int p_ = 0;
    VariableOrder order_;
    std::vector<std::vector<Node>> layers_;
    std::vector<std::vector<Value>> one_values_;
};

Bdd compile(const MkpInstance& instance, const VariableOrder& order);

struct BddStats {
    long long num_nodes = 0;
    long long width = 0;
    std::vector<long long> nodes_per_layer;

    bool operator==(const BddStats&) const = default;
};

BddStats bdd_stats(const Bdd& bdd);

}  // namespace mobdd
