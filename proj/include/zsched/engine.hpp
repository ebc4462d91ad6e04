#pragma once

// Two simulators: an exact CTMC over queue lengths (for policies that only
// look at queue lengths) and an event-driven simulator over sampled job
// traces.  Both report SimMetrics and share the replication driver.

#include <zsched/allocation.hpp>
#include <zsched/metrics.hpp>
#include <zsched/pending.hpp>
#include <zsched/policyz.hpp>
#include <zsched/stats.hpp>
#include <zsched/workload.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace zsched {

// --- CTMC engine -----------------------------------------------------------

/// Policy that maps queue lengths to per-queue service rates (jobs per time).
class QueuePolicy {
public:
    virtual ~QueuePolicy() = default;
    virtual void service_rates(std::span<const std::size_t> lengths, std::span<double> rates) const = 0;
};

/// Processor sharing: a nonempty queue i completes jobs at f_i * s_i.
class FapQueuePolicy final : public QueuePolicy {
public:
    FapQueuePolicy(std::span<const StreamSpec> specs, AllocationVector f);
    void service_rates(std::span<const std::size_t> lengths, std::span<double> rates) const override;

private:
    AllocationVector f_;
    std::vector<double> service_;
};

/// Full rate s_i to the queue picked by policyz::select.
class PolicyZQueuePolicy final : public QueuePolicy {
public:
    PolicyZQueuePolicy(std::span<const StreamSpec> specs, std::shared_ptr<const policyz::PriorityTable> table);
    void service_rates(std::span<const std::size_t> lengths, std::span<double> rates) const override;

private:
    std::shared_ptr<const policyz::PriorityTable> table_;
    std::vector<double> service_;
};

/// Competing exponential clocks: arrivals at r_i, expiries at l_i d_i (every
/// queued job, the one in service included), completions at the policy's
/// rate.  busy_time integrates the processor fraction in use; useful_time
/// credits the effort spent on a queue's head job when it completes, and
/// discards it when an expiry hits the head (probability 1/l_i).
SimMetrics run_ctmc(std::span<const StreamSpec> specs, const QueuePolicy& policy, double horizon,
                    std::uint64_t seed, EventLog* log = nullptr);

// --- Trace engine ----------------------------------------------------------

/// Event-driven execution of a trace.  At an instant, expiries are handled
/// first (a running job that expires is aborted), then the completion, then
/// arrivals, then the scheduler's timer; the scheduler then decides.  A job
/// earns its reward iff it completes by its deadline and by the horizon.
/// Throws TraceError for malformed traces and std::logic_error if the
/// scheduler idles with pending work or picks a job that is not pending.
SimMetrics run_trace(std::span<const Job> trace, std::size_t streams, TraceScheduler& scheduler, double horizon,
                     EventLog* log = nullptr);

// --- Replications ----------------------------------------------------------

struct ReplicationResult {
    std::vector<SimMetrics> runs;
    Summary revenue_rate;
    Summary epu;
};

/// Runs `run(seed_k, k)` for k = 0..n_reps-1 with seed_k = derive_seed(base, k)
/// on up to `threads` worker threads (0: hardware concurrency).  Results are
/// ordered by k, so the outcome does not depend on the thread count.
ReplicationResult replicate(const std::function<SimMetrics(std::uint64_t, std::size_t)>& run,
                            std::uint64_t base_seed, std::size_t n_reps, std::size_t threads = 0);

ReplicationResult summarize_runs(std::vector<SimMetrics> runs);

/// Builds a fresh scheduler for one run.
using SchedulerFactory = std::function<std::unique_ptr<TraceScheduler>()>;

/// Trace replications: replication k samples the workload with seed_k, so
/// different policies given the same base seed see identical traces.
ReplicationResult replicate_trace(const WorkloadSpec& workload, const SchedulerFactory& make, std::size_t n_reps,
                                  std::size_t threads = 0);

/// CTMC replications with seeds derived from base_seed.
ReplicationResult replicate_ctmc(std::span<const StreamSpec> specs, const QueuePolicy& policy, double horizon,
                                 std::uint64_t base_seed, std::size_t n_reps, std::size_t threads = 0);

} // namespace zsched
