#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace zsched {

struct StreamCounters {
    std::size_t arrivals = 0;
    std::size_t completions = 0;
    std::size_t expirations = 0;
    std::size_t still_pending = 0;
    double revenue = 0.0;

    bool operator==(const StreamCounters&) const = default;
};

struct SimMetrics {
    double horizon = 0.0;
    double revenue_total = 0.0;
    double revenue_rate = 0.0;
    double busy_time = 0.0;
    double useful_time = 0.0;
    double epu = 0.0;
    std::vector<StreamCounters> streams;

    bool operator==(const SimMetrics&) const = default;

    /// Fills revenue_total, revenue_rate and epu from the per-stream counters.
    void finalize();

    /// Throws std::logic_error describing the first violated identity:
    /// conservation per stream, revenue = sum completions * reward, and
    /// 0 <= useful <= busy <= horizon (up to rounding).
    void check(const std::vector<double>& rewards) const;
};

enum class EventKind { arrival, completion, expiry, preemption, phase, rejection, readmission };

std::string to_string(EventKind kind);

struct EventRecord {
    double time = 0.0;
    EventKind kind = EventKind::arrival;
    std::size_t stream = 0;
    /// Trace position of the job; -1 where no single job applies.
    long long job = -1;
};

/// Optional event sink; recording is off unless a log is attached.
class EventLog {
public:
    void record(double time, EventKind kind, std::size_t stream, long long job)
    {
        events_.push_back(EventRecord{time, kind, stream, job});
    }
    const std::vector<EventRecord>& events() const { return events_; }

    /// CSV with header time,kind,stream,job.
    std::string to_csv() const;

private:
    std::vector<EventRecord> events_;
};

} // namespace zsched
