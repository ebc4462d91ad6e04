#include <zsched/engine.hpp>

#include <zsched/errors.hpp>
#include <zsched/rng.hpp>

#include <cmath>

namespace zsched {

SimMetrics run_ctmc(std::span<const StreamSpec> specs, const QueuePolicy& policy, double horizon,
                    std::uint64_t seed, EventLog* log)
{
    if (!(std::isfinite(horizon) && horizon >= 0.0)) {
        throw ConfigError("horizon must be finite and >= 0");
    }
    const std::size_t n = specs.size();
    SimMetrics m;
    m.horizon = horizon;
    m.streams.resize(n);

    std::vector<std::size_t> len(n, 0);
    std::vector<double> service(n, 0.0);
    std::vector<double> head_effort(n, 0.0);
    std::vector<double> clocks(3 * n, 0.0);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(SampleKind::ctmc)));

    double now = 0.0;
    while (now < horizon) {
        policy.service_rates(len, service);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (len[i] == 0 && service[i] != 0.0) {
                throw std::logic_error("queue policy serves an empty queue");
            }
            total += specs[i].arrival_rate() + static_cast<double>(len[i]) * specs[i].deadline_rate() + service[i];
        }
        const double dt = rng.exponential_rate(total);
        const double step = std::min(dt, horizon - now);
        for (std::size_t i = 0; i < n; ++i) {
            const double share = service[i] / specs[i].service_rate();
            m.busy_time += share * step;
            head_effort[i] += share * step;
        }
        now += dt;
        if (now >= horizon) {
            break;
        }

        // Categorical draw over (queue, clock) pairs laid out as
        // [arrival, expiry, completion] per queue.
        for (std::size_t i = 0; i < n; ++i) {
            clocks[3 * i] = specs[i].arrival_rate();
            clocks[3 * i + 1] = static_cast<double>(len[i]) * specs[i].deadline_rate();
            clocks[3 * i + 2] = service[i];
        }
        double u = rng.uniform() * total;
        std::size_t pick = clocks.size();
        for (std::size_t k = 0; k < clocks.size(); ++k) {
            if (clocks[k] > 0.0) {
                pick = k;
                if (u < clocks[k]) {
                    break;
                }
                u -= clocks[k];
            }
        }
        const std::size_t q = pick / 3;
        const std::size_t kind = pick % 3;

        StreamCounters& c = m.streams[q];
        switch (kind) {
        case 0:
            ++len[q];
            ++c.arrivals;
            if (log) {
                log->record(now, EventKind::arrival, q, -1);
            }
            break;
        case 1:
            // The expiring job is uniform among the queued ones.
            if (rng.uniform() * static_cast<double>(len[q]) < 1.0) {
                head_effort[q] = 0.0;
            }
            --len[q];
            ++c.expirations;
            if (log) {
                log->record(now, EventKind::expiry, q, -1);
            }
            break;
        default:
            --len[q];
            ++c.completions;
            c.revenue += specs[q].reward();
            m.useful_time += head_effort[q];
            head_effort[q] = 0.0;
            if (log) {
                log->record(now, EventKind::completion, q, -1);
            }
            break;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        m.streams[i].still_pending = len[i];
    }
    m.finalize();
    return m;
}

} // namespace zsched
