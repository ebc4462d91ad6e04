#pragma once

// Scalar Bellman backup for one state of the two-queue model.  The AVX2 sweep
// reproduces this exact operation sequence lane-wise.

#include <zsched/kernels.hpp>

#include <limits>

namespace zsched::kernels::detail {

struct ActionValues {
    // Unnormalized (times Lambda) action values; -inf marks an illegal action.
    double serve[2] = {-std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity()};
    double idle = -std::numeric_limits<double>::infinity();
};

inline ActionValues backup_state(const TwoQueueRates& m, const double* h, std::size_t i, std::size_t j)
{
    const std::size_t w = m.cap + 1;
    const double* self = h + i * w;
    const double* up = i < m.cap ? self + w : self;
    const double* down = i > 0 ? self - w : self;

    const double hv = self[j];
    const double a1 = up[j];
    const double a2 = j < m.cap ? self[j + 1] : hv;
    const double x1 = down[j];
    const double x2 = j > 0 ? self[j - 1] : hv;

    const double id1 = static_cast<double>(i) * m.deadline[0];
    const double jd2 = static_cast<double>(j) * m.deadline[1];

    double base = m.arrival[0] * a1;
    base = base + m.arrival[1] * a2;
    base = base + id1 * x1;
    base = base + jd2 * x2;

    double out = (m.arrival[0] + m.arrival[1]) + id1;
    out = out + jd2;
    const double stay = m.uniformization - out;

    ActionValues q;
    if (i > 0) {
        double v = base + m.service[0] * (m.reward[0] + x1);
        q.serve[0] = v + (stay - m.service[0]) * hv;
    }
    if (j > 0) {
        double v = base + m.service[1] * (m.reward[1] + x2);
        q.serve[1] = v + (stay - m.service[1]) * hv;
    }
    if (i == 0 && j == 0) {
        q.idle = base + stay * hv;
    }
    return q;
}

/// Best value with ties resolved toward serving stream 1.
inline double best_value(const ActionValues& q)
{
    if (q.idle > -std::numeric_limits<double>::infinity()) {
        return q.idle;
    }
    double best = q.serve[0];
    if (q.serve[1] > best) {
        best = q.serve[1];
    }
    return best;
}

} // namespace zsched::kernels::detail
