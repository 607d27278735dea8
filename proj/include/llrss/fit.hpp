#pragma once

#include <cstddef>
#include <vector>

#include "llrss/model.hpp"
#include "llrss/optimize.hpp"

namespace llrss {

/// Output of an iterative estimator.
struct FitResult {
    LLParams params;
    double objective = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    /// Gradient norm in (ln alpha, ln beta) coordinates at the returned point.
    double grad_norm = 0.0;
    /// Objective values at accepted optimizer iterates (only if requested).
    std::vector<double> objective_trace;
};

struct FitOptions {
    optim::Options optimizer{};
};

}  // namespace llrss
