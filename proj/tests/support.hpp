#pragma once

#include <zsched/workload.hpp>

#include <cmath>
#include <vector>

namespace testing {

inline bool rel_close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// Two streams sharing a mean inter-arrival of 350 and a mean deadline.
inline std::vector<zsched::StreamSpec> two_streams(double D, double e1, double e2, double v1, double v2 = 1.0)
{
    return {zsched::StreamSpec::from_interarrival(350, e1, D, v1),
            zsched::StreamSpec::from_interarrival(350, e2, D, v2)};
}

inline std::vector<zsched::StreamSpec> e1_streams() { return two_streams(1000, 600, 600, 1.0); }

// Hand-built job for scheduler and engine tests.
inline zsched::Job job(std::size_t stream, double arrival, double exec, double deadline_abs, double reward = 1.0)
{
    return zsched::Job{stream, arrival, exec, deadline_abs, reward};
}

} // namespace testing
