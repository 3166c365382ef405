#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mobdd {

using Value = std::int64_t;

/// Multiobjective 0/1 knapsack: maximize p objectives subject to one capacity row.
struct MkpInstance {
    std::string id;
    int p = 0;
    int n = 0;
    std::vector<Value> weights;              // n entries
    std::vector<std::vector<Value>> values;  // p rows of n entries
    Value capacity = 0;

    Value value(int objective, int item) const { return values[objective][item]; }
    Value total_weight() const;

    /// Throws mobdd::Error when dimensions or entries are invalid.
    void validate() const;

    bool operator==(const MkpInstance& other) const = default;
};

std::string instance_id(int p, int n, std::uint64_t seed, const std::string& split);

/// ceil(sum(w) / 2)
Value half_capacity(const std::vector<Value>& weights);

/// Weights and values are uniform on {1..100}; capacity is ceil(sum(w) / 2).
MkpInstance generate_instance(std::uint64_t seed, int p, int n, const std::string& split = "train");

MkpInstance parse_instance(std::istream& in, const std::string& source = "<stream>");
MkpInstance read_instance(const std::filesystem::path& path);
void format_instance(std::ostream& out, const MkpInstance& instance);
void write_instance(const MkpInstance& instance, const std::filesystem::path& path);

}  // namespace mobdd
