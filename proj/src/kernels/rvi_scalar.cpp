#include "two_queue_backup.hpp"

#include <algorithm>

namespace zsched::kernels::detail {

SweepStats bellman_sweep_scalar(const TwoQueueRates& m, std::span<const double> h, std::span<double> next)
{
    const double inv_lambda = 1.0 / m.uniformization;
    const std::size_t w = m.cap + 1;
    SweepStats st{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < w; ++i) {
        for (std::size_t j = 0; j < w; ++j) {
            const double v = best_value(backup_state(m, h.data(), i, j)) * inv_lambda;
            const double diff = v - h[i * w + j];
            next[i * w + j] = v;
            st.diff_min = std::min(st.diff_min, diff);
            st.diff_max = std::max(st.diff_max, diff);
        }
    }
    return st;
}

} // namespace zsched::kernels::detail
