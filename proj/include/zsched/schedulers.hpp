#pragma once

// Job-level baselines for the trace engine, plus trace-mode adapters for the
// fractional allocation and the priority-index policy.

#include <zsched/allocation.hpp>
#include <zsched/metrics.hpp>
#include <zsched/pending.hpp>
#include <zsched/policyz.hpp>

#include <limits>
#include <memory>
#include <vector>

namespace zsched {

// --- EDF -------------------------------------------------------------------

SchedulerDecision edf_select(const PendingSet& p);

class EdfScheduler final : public TraceScheduler {
public:
    SchedulerDecision decide(PendingSet& p) override { return edf_select(p); }
};

// --- REDF ------------------------------------------------------------------

/// EDF demand scan: with pending jobs in deadline order, the cumulative
/// remaining execution from now must not pass any deadline.
bool edf_feasible(const PendingSet& p);

/// Runs after `arriving` joined the pending set.  While the set is not EDF
/// feasible, rejects the lowest-reward pending job (ties: latest deadline,
/// then latest trace position).  Returns the rejected jobs in order.
std::vector<JobId> redf_admit(PendingSet& p, JobId arriving);

/// Re-admits rejected jobs in decreasing reward (ties: earliest deadline),
/// stopping at the first one that would break feasibility.  Returns the
/// re-admitted jobs.
std::vector<JobId> redf_resurrect(PendingSet& p);

class RedfScheduler final : public TraceScheduler {
public:
    explicit RedfScheduler(EventLog* log = nullptr) : log_(log) {}

    void on_arrival(PendingSet& p, JobId id) override;
    void on_completion(PendingSet& p, JobId id) override;
    SchedulerDecision decide(PendingSet& p) override;

    std::size_t rejections() const { return rejections_; }
    std::size_t readmissions() const { return readmissions_; }

private:
    void resurrect(PendingSet& p);

    EventLog* log_;
    std::size_t rejections_ = 0;
    std::size_t readmissions_ = 0;
};

// --- ROBUST ----------------------------------------------------------------

enum class Knowledge {
    /// True remaining execution of every job.
    exact,
    /// Only the stream's mean execution time; the job's length is estimated as
    /// max(mean - executed, 0).
    mean,
};

Knowledge parse_knowledge(const std::string& name);
std::string to_string(Knowledge k);

struct PhaseRecord {
    bool odd = true;
    double start = 0.0;
    double end = 0.0;
    /// Odd: chosen job's length estimate at phase start.  Even: odd length / (slack - 1).
    double planned = 0.0;
    /// Odd: chosen job completed.  Even: phase ran until its timer.
    bool full = false;
};

/// Alternating odd/even phases.  Odd phase: run the longest eligible job
/// without preemption until it terminates.  Even phase: lasts
/// (odd length) / (slack - 1) and runs the longest eligible job, switching
/// when a longer one arrives.  An eligible job can still finish by its
/// deadline according to the length estimate; if none is eligible the
/// longest pending job runs.  The machine resets whenever the pending set
/// empties and starts a new odd phase at the next decision with work.
class RobustScheduler final : public TraceScheduler {
public:
    /// Throws ConfigError unless slack > 1.  `mean_exec` holds the per-stream
    /// means used by Knowledge::mean.
    RobustScheduler(double slack, Knowledge knowledge, std::vector<double> mean_exec);

    void on_arrival(PendingSet& p, JobId id) override;
    void on_completion(PendingSet& p, JobId id) override { on_terminated(p, id); }
    void on_expiry(PendingSet& p, JobId id) override { on_terminated(p, id); }
    void on_timer(PendingSet& p) override;
    SchedulerDecision decide(PendingSet& p) override;
    double next_timer() const override;

    const std::vector<PhaseRecord>& phases() const { return phases_; }

    double length_estimate(const PendingSet& p, JobId id) const;

private:
    enum class Phase { none, odd, even };

    void on_terminated(PendingSet& p, JobId id);
    std::optional<JobId> longest(const PendingSet& p) const;
    bool eligible(const PendingSet& p, JobId id) const;
    void start_odd(PendingSet& p);
    void close_even(double now, bool full);

    double slack_;
    Knowledge knowledge_;
    std::vector<double> mean_exec_;

    Phase phase_ = Phase::none;
    double phase_start_ = 0.0;
    double even_end_ = std::numeric_limits<double>::infinity();
    std::optional<JobId> current_;
    std::vector<PhaseRecord> phases_;
};

// --- Fractional allocation, trace mode -------------------------------------

/// Weighted round-robin emulation of processor shares.  Each cycle of length
/// `quantum` is split among the streams nonempty at its start in proportion to
/// their shares (renormalized over those streams; equal split if they all
/// have zero share), served in stream order.  A slice whose stream empties
/// hands the processor to the next slice at once.  Within a stream jobs run
/// in arrival order, which keeps the service process blind to deadlines as in
/// the queueing model the shares come from.
class FapTraceScheduler final : public TraceScheduler {
public:
    /// Throws ConfigError unless quantum > 0.
    FapTraceScheduler(AllocationVector f, double quantum);

    void on_timer(PendingSet& p) override;
    SchedulerDecision decide(PendingSet& p) override;
    double next_timer() const override;

private:
    struct Slice {
        std::size_t stream;
        double length;
    };

    void start_cycle(const PendingSet& p);

    AllocationVector f_;
    double quantum_;
    std::vector<Slice> slices_;
    std::size_t slice_ = 0;
    double slice_end_ = std::numeric_limits<double>::infinity();
    bool slice_started_ = false;
};

/// Default quantum: min_i mean_exec / 100.
double default_quantum(std::span<const StreamSpec> specs);

// --- Priority index, trace mode --------------------------------------------

/// Serves the stream chosen by policyz::select on the pending queue lengths;
/// within it, the earliest deadline.
class PolicyZTraceScheduler final : public TraceScheduler {
public:
    explicit PolicyZTraceScheduler(std::shared_ptr<const policyz::PriorityTable> table);

    SchedulerDecision decide(PendingSet& p) override;

private:
    std::shared_ptr<const policyz::PriorityTable> table_;
};

} // namespace zsched
