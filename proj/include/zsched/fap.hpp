#pragma once

// Optimal fractional allocation: maximize the summed stream revenue over the
// simplex of processor shares.

#include <zsched/allocation.hpp>
#include <zsched/workload.hpp>

#include <cstddef>
#include <span>

namespace zsched::fap {

inline constexpr double kDefaultTolerance = 1e-3;

struct FapResult {
    AllocationVector f_star;
    double v_star = 0.0;
    std::size_t evaluations = 0;
    /// Number of distinct local optima the multi-start search ended in (n > 2);
    /// 1 for n <= 2.
    std::size_t local_optima = 1;
};

/// n = 1: f = (1).  n = 2: 101-point scan of f1 then golden-section refinement
/// inside the bracket of the best grid point.  n > 2: compass search on the
/// simplex (mass transfers between pairs of streams, expand on success, halve
/// on failure) from ten deterministic starts.  The best point ever evaluated is
/// returned; exact ties go to the lexicographically smallest allocation.
FapResult optimize(std::span<const StreamSpec> specs, double tol = kDefaultTolerance);

/// V_f for many allocations at once (rows of length specs.size()), batched
/// through the SIMD series kernel.
std::vector<double> revenue_batch(std::span<const StreamSpec> specs, std::span<const double> allocations);

} // namespace zsched::fap
