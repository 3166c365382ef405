#pragma once

#include "mobdd/bdd.hpp"
#include "mobdd/instance.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mobdd {

using ObjectiveVector = std::vector<Value>;

enum class Sense { Minimize, Maximize };

enum class CostMode { Checks, WallTime };

CostMode parse_cost_mode(const std::string& s);
std::string to_string(CostMode mode);

/// a dominates b: no worse in every objective and strictly better in one.
bool dominates(std::span<const Value> a, std::span<const Value> b, Sense sense);

enum class Relation { FirstDominates, SecondDominates, Equal, Incomparable };

/// One pairwise dominance comparison.
Relation compare(std::span<const Value> a, std::span<const Value> b, Sense sense);

/// Keep-list non-dominated filter over flat p-wide vectors.
/// Each candidate is compared against the survivors in insertion order until
/// a survivor dominates or equals it; survivors it dominates are dropped.
/// Every call to compare() adds one to the check counter.
class NdFilter {
public:
    NdFilter(int p, Sense sense) : p_(p), sense_(sense) {}

    void insert(std::span<const Value> candidate, std::uint64_t& checks);
    /// Inserts base + shift without materializing the sum elsewhere.
    void insert_shifted(std::span<const Value> base, std::span<const Value> shift, std::uint64_t& checks);

    std::size_t size() const { return data_.size() / p_; }
    std::span<const Value> at(std::size_t i) const { return {data_.data() + i * p_, static_cast<std::size_t>(p_)}; }
    const std::vector<Value>& flat() const { return data_; }
    std::vector<Value> release() { return std::move(data_); }

private:
    void insert_scratch(std::uint64_t& checks);

    int p_;
    Sense sense_;
    std::vector<Value> data_;
    std::vector<Value> scratch_;
};

std::vector<ObjectiveVector> nd_filter(const std::vector<ObjectiveVector>& vectors, Sense sense,
                                       std::uint64_t& checks);

/// Sorted lexicographically ascending; the canonical frontier form.
struct ParetoFrontier {
    std::vector<ObjectiveVector> points;

    std::size_t size() const { return points.size(); }
    bool operator==(const ParetoFrontier&) const = default;
};

ParetoFrontier make_frontier(std::vector<ObjectiveVector> points);

struct EnumerationOptions {
    CostMode cost_mode = CostMode::Checks;
    Sense sense = Sense::Maximize;
    /// Abort (solved = false) once checks exceed this; 0 disables the cap.
    std::uint64_t check_limit = 0;
};

struct EnumerationReport {
    ParetoFrontier frontier;
    std::uint64_t checks = 0;
    /// Total label-set size over the nodes of each layer after the root.
    std::vector<long long> intermediate_per_layer;
    double seconds = 0;
    double enumeration_cost = 0;
    bool solved = true;
};

EnumerationReport enumerate_pf(const Bdd& bdd, const MkpInstance& instance, const EnumerationOptions& options = {});

inline constexpr int kBruteForceMaxVars = 24;

ParetoFrontier brute_force_pf(const MkpInstance& instance, Sense sense = Sense::Maximize);

std::string frontier_csv(const ParetoFrontier& frontier, int p);

}  // namespace mobdd
