#include <zsched/stats.hpp>

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <stdexcept>

namespace zsched {

double t_quantile_975(std::size_t dof)
{
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.975);
}

Summary summarize(std::span<const double> xs)
{
    if (xs.empty()) {
        throw std::invalid_argument("summarize: no samples");
    }
    Summary s;
    s.n = xs.size();
    for (double x : xs) {
        s.mean += x;
    }
    s.mean /= static_cast<double>(s.n);
    if (s.n < 2) {
        s.ci_lo = s.ci_hi = s.mean;
        return s;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - s.mean) * (x - s.mean);
    }
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    const double half = t_quantile_975(s.n - 1) * s.stddev / std::sqrt(static_cast<double>(s.n));
    s.ci_lo = s.mean - half;
    s.ci_hi = s.mean + half;
    return s;
}

} // namespace zsched
