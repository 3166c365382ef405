#pragma once

#include "mobdd/bdd.hpp"
#include "mobdd/instance.hpp"
#include "mobdd/pareto.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mobdd {

/// "<p>x<n>", the size key used in every report.
std::string size_key(int p, int n);

struct MethodRunRecord {
    std::string instance_id;
    std::string size;
    std::string method;
    bool solved = true;
    double cost = 0;  // checks or seconds, per the run's cost mode
    std::uint64_t checks = 0;
    double seconds = 0;
    BddStats stats;
    std::vector<long long> intermediate_per_layer;
    std::size_t frontier_size = 0;
};

double shifted_gmean(const std::vector<double>& values, double shift = 5.0);

/// Mean heuristic cost over instances divided by the mean cost of k_random
/// random orders (seeds seed, seed+1, ...) averaged over instances.
double ratio_vs_random(const std::vector<MkpInstance>& instances, const std::string& heuristic, int k_random,
                       std::uint64_t seed, CostMode mode = CostMode::Checks);

struct Table4Row {
    std::string size, method;
    std::size_t count = 0;
    double gmean = 0, min = 0, max = 0;
};

std::vector<Table4Row> summary_table(const std::vector<MethodRunRecord>& records, double shift = 5.0);

struct Table5Row {
    std::string size, method;
    double nodes_pct = 0, width_pct = 0, checks_pct = 0, gmean_pct = 0;
};

/// Percentages of each method's means relative to the "lex" method, over the
/// instances both solved.
std::vector<Table5Row> relative_to_lex(const std::vector<MethodRunRecord>& records, double shift = 5.0);

struct CumulativePoint {
    std::string size, method;
    int layer = 0;  // 1-based
    double mean_cumulative = 0;
};

std::vector<CumulativePoint> cumulative_intermediate(const std::vector<MethodRunRecord>& records);

std::string records_csv(const std::vector<MethodRunRecord>& records, CostMode mode);
std::vector<MethodRunRecord> parse_records_csv(const std::string& text, const std::string& source);

std::string table4_csv(const std::vector<Table4Row>& rows);
std::string table5_csv(const std::vector<Table5Row>& rows);
std::string cumulative_csv(const std::vector<CumulativePoint>& points);

struct Table2Row {
    std::string heuristic, size;
    double ratio = 0;
};
std::string table2_csv(const std::vector<Table2Row>& rows);

}  // namespace mobdd
