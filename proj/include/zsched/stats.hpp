#pragma once

#include <cstddef>
#include <span>

namespace zsched {

/// Sample mean, sample standard deviation and a two-sided 95% Student-t
/// confidence interval for the mean.  With a single sample the interval
/// collapses onto the mean.
struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;

    bool contains(double x) const { return ci_lo <= x && x <= ci_hi; }
    bool overlaps(const Summary& o) const { return ci_lo <= o.ci_hi && o.ci_lo <= ci_hi; }
};

Summary summarize(std::span<const double> xs);

/// 0.975 quantile of Student's t with `dof` degrees of freedom.
double t_quantile_975(std::size_t dof);

} // namespace zsched
