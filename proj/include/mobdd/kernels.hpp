#pragma once

#include "mobdd/bdd.hpp"
#include "mobdd/pareto.hpp"

#include <span>
#include <vector>

namespace mobdd {

/// One compile + enumerate job.
struct EvalTask {
    const MkpInstance* instance = nullptr;
    VariableOrder order;
};

struct EvalResult {
    EnumerationReport report;
    BddStats stats;
};

/// OpenMP batch over independent tasks; result i belongs to task i.
std::vector<EvalResult> evaluate_batch(std::span<const EvalTask> tasks, const EnumerationOptions& options);

/// Serial reference for evaluate_batch.
std::vector<EvalResult> evaluate_batch_reference(std::span<const EvalTask> tasks, const EnumerationOptions& options);

EvalResult evaluate_one(const MkpInstance& instance, const VariableOrder& order, const EnumerationOptions& options);

int max_threads();
void set_threads(int threads);

}  // namespace mobdd
