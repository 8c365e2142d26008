#pragma once

// Thin wrapper over GSL's Nelder–Mead simplex minimizer.

#include <functional>
#include <span>
#include <vector>

namespace eprsteer::detail {

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` from `start` with initial simplex step `step`; stops once the
/// simplex characteristic size drops below `size_tol` or after `max_iter`.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> start, double step, double size_tol,
                           int max_iter);

}  // namespace eprsteer::detail
