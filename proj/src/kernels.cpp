#include "mobdd/kernels.hpp"

#include <exception>

#include <omp.h>

namespace mobdd {

EvalResult evaluate_one(const MkpInstance& instance, const VariableOrder& order, const EnumerationOptions& options) {
    const Bdd bdd = compile(instance, order);
    EvalResult r;
    r.stats = bdd_stats(bdd);
    r.report = enumerate_pf(bdd, instance, options);
    return r;
}

std::vector<EvalResult> evaluate_batch_reference(std::span<const EvalTask> tasks, const EnumerationOptions& options) {
    std::vector<EvalResult> out;
    out.reserve(tasks.size());
    for (const auto& t : tasks) out.push_back(evaluate_one(*t.instance, t.order, options));
    return out;
}

std::vector<EvalResult> evaluate_batch(std::span<const EvalTask> tasks, const EnumerationOptions& options) {
    const long count = static_cast<long>(tasks.size());
    std::vector<EvalResult> out(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        try {
            out[i] = evaluate_one(*tasks[i].instance, tasks[i].order, options);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace mobdd
