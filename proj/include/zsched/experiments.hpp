#pragma once

// Presets that regenerate the paper's campaigns at desk scale: the two-stream
// comparison rows, the ROBUST suite and the REDF suite.

#include <zsched/config.hpp>
#include <zsched/schedulers.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zsched::experiments {

struct Table1Row {
    const char* id;
    double deadline;
    double exec1;
    double exec2;
    double reward1;
    double f1_star;  // as printed
};

inline constexpr double kTable1Interarrival = 350.0;
inline constexpr double kTable1Reward2 = 1.0;
inline constexpr double kTable1Horizon = 900'000.0;
inline constexpr std::size_t kTable1Replications = 20;
inline constexpr double kSuiteHorizon = 1'000'000.0;
inline constexpr std::size_t kSuiteReplications = 50;

std::span<const Table1Row> table1_rows();
/// Throws ConfigError for unknown ids.
const Table1Row& table1_row(const std::string& id);
std::vector<StreamSpec> table1_streams(const Table1Row& row);

/// CLI overrides shared by every preset.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replications;
    std::optional<double> horizon;
    DeadlineRule deadline_rule = DeadlineRule::exponential;
};

struct PresetPolicy {
    std::string label;
    PolicySpec spec;
};

struct Comparison {
    enum class Kind { improvement, loss };
    Kind kind;
    std::string subject;
    std::string baseline;
};

struct ExperimentPreset {
    std::string id;
    WorkloadSpec workload;
    EngineKind engine = EngineKind::trace;
    std::vector<PresetPolicy> policies;
    std::size_t replications = 0;
    std::vector<Comparison> comparisons;
};

/// Two streams with mean inter-arrival 350, v2 = 1 and the row's (D, e1, e2,
/// v1); CTMC engine; FAP, Policy Z and the dynamic-programming policy.
ExperimentPreset preset_table1(const std::string& id, const Overrides& o = {});

/// Four streams with mean executions {50,100,200,400}, rewards equal to the
/// execution means, mean deadline slack * e_i and a common arrival rate with
/// total utilization `intensity`.  One ROBUST entry per knowledge mode.
ExperimentPreset preset_robust(double slack, double intensity, std::span<const Knowledge> knowledge,
                               const Overrides& o = {});

enum class RewardModel { random, linear };
RewardModel parse_reward_model(const std::string& name);
std::string to_string(RewardModel m);

/// Four streams with mean executions {150,100,200,400}, mean deadlines
/// {600,800,1600,3200}, rewards per model; Policy Z against REDF.
ExperimentPreset preset_redf(RewardModel model, double intensity, const Overrides& o = {});

std::vector<double> default_intensities();

struct PolicyRun {
    std::string label;
    ReplicationResult result;
    std::optional<double> sdp_gain;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<PolicyRun> runs;
    std::vector<Comparison> comparisons;

    /// Throws std::out_of_range for unknown labels.
    const PolicyRun& run(const std::string& label) const;
};

ExperimentResult run_experiment(const ExperimentPreset& preset, std::size_t threads = 0);

} // namespace zsched::experiments
