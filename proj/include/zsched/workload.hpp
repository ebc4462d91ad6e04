#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace zsched {

/// One service class: Poisson arrivals, exponential execution times and
/// exponential relative deadlines, fixed reward per completed job.
class StreamSpec {
public:
    StreamSpec() = default;

    /// Throws ConfigError unless every parameter is finite and positive.
    StreamSpec(double arrival_rate, double mean_exec, double mean_deadline, double reward);

    static StreamSpec from_interarrival(double mean_interarrival, double mean_exec,
                                        double mean_deadline, double reward);

    double arrival_rate() const { return arrival_rate_; }
    double mean_exec() const { return mean_exec_; }
    double mean_deadline() const { return mean_deadline_; }
    double reward() const { return reward_; }

    double service_rate() const { return 1.0 / mean_exec_; }
    double deadline_rate() const { return 1.0 / mean_deadline_; }

    /// Offered load e * r.
    double load() const { return mean_exec_ * arrival_rate_; }

    bool operator==(const StreamSpec&) const = default;

private:
    double arrival_rate_ = 1.0;
    double mean_exec_ = 1.0;
    double mean_deadline_ = 1.0;
    double reward_ = 1.0;
};

/// How relative deadlines are drawn for sampled jobs.
enum class DeadlineRule {
    /// Exponential offset with the stream's mean deadline.
    exponential,
    /// Offset = (mean_deadline / mean_exec) * sampled execution, i.e. a hard
    /// slack ratio per job.
    proportional,
};

struct WorkloadSpec {
    std::vector<StreamSpec> streams;
    double horizon = 0.0;
    std::uint64_t seed = 0;
    DeadlineRule deadline_rule = DeadlineRule::exponential;

    /// Throws ConfigError on an empty stream list or non-positive horizon.
    void validate() const;
};

struct Job {
    std::size_t stream = 0;
    double arrival = 0.0;
    double exec_total = 0.0;
    double deadline_abs = 0.0;
    double reward = 0.0;
};

double utilization(std::span<const StreamSpec> streams);
double utilization(const WorkloadSpec& spec);

/// Strict: utilization exactly 1 counts as not overloaded.
bool is_overloaded(const WorkloadSpec& spec);

/// Samples every stream's jobs on [0, horizon) and merges them by arrival
/// (ties by stream id).  Deterministic in (spec, seed).
std::vector<Job> sample_trace(const WorkloadSpec& spec);

/// Parses {"streams":[...], "horizon":..., "seed":...}.  Each stream needs
/// exactly one of "rate" and "P".
WorkloadSpec workload_from_json(const nlohmann::json& j);
WorkloadSpec load_workload(const std::string& path);
nlohmann::json workload_to_json(const WorkloadSpec& spec);

DeadlineRule parse_deadline_rule(const std::string& name);
std::string to_string(DeadlineRule rule);

} // namespace zsched
