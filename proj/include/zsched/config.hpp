#pragma once

#include <zsched/engine.hpp>
#include <zsched/workload.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

namespace zsched {

enum class EngineKind { trace, ctmc };

EngineKind parse_engine(const std::string& name);
std::string to_string(EngineKind e);

/// Policy name plus its parameter object:
///   "edf", "redf"                      trace only
///   "robust"  {slack, knowledge}       trace only
///   "fap"     {f: "auto"|[...], quantum}
///   "policyz" {f: "auto"|[...], l_max}
///   "sdp"     {cap, tol}               CTMC only, two streams
struct PolicySpec {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
};

struct RunConfig {
    std::string name = "run";
    WorkloadSpec workload;
    PolicySpec policy;
    EngineKind engine = EngineKind::trace;
    std::size_t replications = 20;
    std::uint64_t seed = 1;
    std::string output;
};

/// Keys: name, workload (object) or workload_file (path relative to
/// base_dir), policy {name, ...params}, engine, horizon, replications, seed,
/// output.  horizon/seed override the workload's own.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::string& path);

/// A policy bound to a workload, ready for either engine.
struct PreparedPolicy {
    std::string label;
    /// Set for policies the trace engine can run.
    SchedulerFactory trace;
    /// Set for queue-length policies the CTMC engine can run.
    std::shared_ptr<const QueuePolicy> ctmc;
    /// Optimal gain when the policy is the dynamic-programming oracle.
    std::optional<double> sdp_gain;
};

/// Validates parameter names and values and precomputes allocations, index
/// tables and dynamic-programming solutions.  Throws ConfigError.
PreparedPolicy prepare_policy(const PolicySpec& spec, std::span<const StreamSpec> streams,
                              const std::string& label = "");

/// Runs the configured replications.  Throws ConfigError if the engine cannot
/// run the policy.
ReplicationResult run_replications(const RunConfig& cfg, const PreparedPolicy& policy, std::size_t threads = 0);

} // namespace zsched
