#pragma once

#include <zsched/workload.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace zsched {

/// Position of a job in the trace being simulated.
using JobId = std::size_t;

/// Live jobs of a trace simulation as seen by a scheduler.  Jobs whose
/// deadline has passed have already been removed when a scheduler hook runs.
/// Rejected jobs (REDF's reject queue) stay live and may expire, but are not
/// pending: they are neither counted in queue lengths nor eligible to run.
class PendingSet {
public:
    PendingSet(std::span<const Job> jobs, std::size_t streams);

    double now() const { return now_; }
    std::span<const Job> jobs() const { return jobs_; }
    const Job& job(JobId id) const { return jobs_[id]; }
    std::size_t streams() const { return queues_.size(); }

    double remaining(JobId id) const { return remaining_[id]; }
    double executed(JobId id) const { return jobs_[id].exec_total - remaining_[id]; }

    /// Pending jobs of one stream in arrival order.
    const std::vector<JobId>& queue(std::size_t stream) const { return queues_[stream]; }
    std::vector<std::size_t> queue_lengths() const;
    std::size_t pending_count() const { return pending_count_; }
    bool empty() const { return pending_count_ == 0; }

    /// Every pending job, grouped by stream.
    std::vector<JobId> pending_jobs() const;

    const std::vector<JobId>& rejected() const { return rejected_; }
    bool is_pending(JobId id) const { return status_[id] == Status::pending; }
    bool is_rejected(JobId id) const { return status_[id] == Status::rejected; }

    std::optional<JobId> running() const { return running_; }

    /// Moves a pending job to the reject queue.
    void reject(JobId id);
    /// Moves a rejected job back to its stream queue.
    void readmit(JobId id);

    // Engine-side mutators.
    void set_now(double t) { now_ = t; }
    void add(JobId id);
    void remove(JobId id);
    void advance_running(double dt);
    void set_running(std::optional<JobId> id) { running_ = id; }
    void mark_done(JobId id) { remaining_[id] = 0.0; }

private:
    enum class Status : unsigned char { future, pending, rejected, gone };

    std::span<const Job> jobs_;
    std::vector<double> remaining_;
    std::vector<Status> status_;
    std::vector<std::vector<JobId>> queues_;
    std::vector<JobId> rejected_;
    std::size_t pending_count_ = 0;
    std::optional<JobId> running_;
    double now_ = 0.0;
};

/// Earliest deadline, then earliest arrival, then lowest stream id, then
/// trace position.
bool edf_before(const Job& a, JobId ia, const Job& b, JobId ib);

/// EDF choice among one stream's pending jobs.
std::optional<JobId> earliest_deadline_in_stream(const PendingSet& p, std::size_t stream);

/// What to run until the next event.
struct SchedulerDecision {
    std::optional<JobId> job;

    static SchedulerDecision idle() { return {}; }
    static SchedulerDecision run(JobId id) { return {id}; }
    bool is_idle() const { return !job.has_value(); }
};

/// Job-level scheduling policy driven by the trace engine.  Hooks fire after
/// the engine has updated the pending set; decide() runs once after all events
/// sharing an instant have been processed.
class TraceScheduler {
public:
    virtual ~TraceScheduler() = default;

    virtual void on_arrival(PendingSet&, JobId) {}
    virtual void on_completion(PendingSet&, JobId) {}
    virtual void on_expiry(PendingSet&, JobId) {}
    virtual void on_timer(PendingSet&) {}

    virtual SchedulerDecision decide(PendingSet& p) = 0;

    /// Absolute time of the next scheduler-internal event, or +inf.
    virtual double next_timer() const;
};

} // namespace zsched
