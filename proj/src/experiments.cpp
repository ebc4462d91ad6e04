#include <zsched/experiments.hpp>

#include <zsched/errors.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace zsched::experiments {

namespace {

constexpr std::array<Table1Row, 15> kRows = {{
    {"E1", 1000, 600, 600, 1.0, 0.50},
    {"E2", 1000, 620, 725, 1.1, 0.54},
    {"E3", 1000, 580, 790, 1.2, 0.57},
    {"E4", 1000, 545, 855, 1.3, 0.61},
    {"E5", 1000, 520, 925, 1.4, 0.64},
    {"E6", 1000, 500, 1010, 1.5, 0.67},
    {"E7", 500, 610, 735, 1.1, 0.55},
    {"E8", 500, 530, 900, 1.3, 0.63},
    {"E9", 500, 475, 1110, 1.5, 0.70},
    {"E10", 250, 590, 765, 1.1, 0.56},
    {"E11", 250, 495, 1020, 1.3, 0.67},
    {"E12", 250, 435, 1430, 1.5, 0.77},
    {"E13", 165, 575, 785, 1.1, 0.58},
    {"E14", 165, 465, 1170, 1.3, 0.72},
    {"E15", 165, 400, 2000, 1.5, 0.84},
}};

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

void apply(WorkloadSpec& w, std::size_t& reps, const Overrides& o)
{
    if (o.seed) {
        w.seed = *o.seed;
    }
    if (o.horizon) {
        w.horizon = *o.horizon;
    }
    if (o.replications) {
        reps = *o.replications;
    }
    w.deadline_rule = o.deadline_rule;
    w.validate();
    if (reps == 0) {
        throw ConfigError("replications must be >= 1");
    }
}

void check_intensity(double intensity)
{
    if (!(intensity > 0.0) || !std::isfinite(intensity)) {
        throw ConfigError("intensity must be positive and finite");
    }
}

} // namespace

std::span<const Table1Row> table1_rows() { return kRows; }

const Table1Row& table1_row(const std::string& id)
{
    for (const auto& row : kRows) {
        if (id == row.id) {
            return row;
        }
    }
    throw ConfigError("unknown Table 1 row: " + id + " (expected E1..E15)");
}

std::vector<StreamSpec> table1_streams(const Table1Row& row)
{
    return {StreamSpec::from_interarrival(kTable1Interarrival, row.exec1, row.deadline, row.reward1),
            StreamSpec::from_interarrival(kTable1Interarrival, row.exec2, row.deadline, kTable1Reward2)};
}

ExperimentPreset preset_table1(const std::string& id, const Overrides& o)
{
    const Table1Row& row = table1_row(id);
    ExperimentPreset p;
    p.id = row.id;
    p.workload.streams = table1_streams(row);
    p.workload.horizon = kTable1Horizon;
    p.workload.seed = 1;
    p.engine = EngineKind::ctmc;
    p.replications = kTable1Replications;
    p.policies = {{"fap", {"fap", {{"f", "auto"}}}},
                  {"policyz", {"policyz", {{"f", "auto"}}}},
                  {"sdp", {"sdp", nlohmann::json::object()}}};
    p.comparisons = {{Comparison::Kind::improvement, "policyz", "fap"},
                     {Comparison::Kind::loss, "policyz", "sdp"}};
    apply(p.workload, p.replications, o);
    return p;
}

ExperimentPreset preset_robust(double slack, double intensity, std::span<const Knowledge> knowledge,
                               const Overrides& o)
{
    if (!(slack > 1.0) || !std::isfinite(slack)) {
        throw ConfigError("slack must be > 1");
    }
    check_intensity(intensity);
    if (knowledge.empty()) {
        throw ConfigError("at least one knowledge mode is required");
    }
    constexpr std::array<double, 4> execs = {50, 100, 200, 400};
    const double rate = intensity / (execs[0] + execs[1] + execs[2] + execs[3]);

    ExperimentPreset p;
    p.id = "robust-s" + format_number(slack) + "-i" + format_number(intensity);
    for (double e : execs) {
        p.workload.streams.emplace_back(rate, e, slack * e, e);
    }
    p.workload.horizon = kSuiteHorizon;
    p.workload.seed = 1;
    p.engine = EngineKind::trace;
    p.replications = kSuiteReplications;
    p.policies.push_back({"policyz", {"policyz", {{"f", "auto"}}}});
    for (Knowledge k : knowledge) {
        const std::string label = "robust-" + to_string(k);
        p.policies.push_back({label, {"robust", {{"slack", slack}, {"knowledge", to_string(k)}}}});
        p.comparisons.push_back({Comparison::Kind::improvement, "policyz", label});
    }
    apply(p.workload, p.replications, o);
    return p;
}

RewardModel parse_reward_model(const std::string& name)
{
    if (name == "random") {
        return RewardModel::random;
    }
    if (name == "linear") {
        return RewardModel::linear;
    }
    throw ConfigError("unknown reward model: " + name + " (expected random|linear)");
}

std::string to_string(RewardModel m) { return m == RewardModel::random ? "random" : "linear"; }

ExperimentPreset preset_redf(RewardModel model, double intensity, const Overrides& o)
{
    check_intensity(intensity);
    constexpr std::array<double, 4> execs = {150, 100, 200, 400};
    constexpr std::array<double, 4> deadlines = {600, 800, 1600, 3200};
    constexpr std::array<double, 4> random_rewards = {150, 300, 400, 200};
    constexpr std::array<double, 4> linear_rewards = {450, 300, 200, 100};
    const auto& rewards = model == RewardModel::random ? random_rewards : linear_rewards;
    const double rate = intensity / (execs[0] + execs[1] + execs[2] + execs[3]);

    ExperimentPreset p;
    p.id = "redf-" + to_string(model) + "-i" + format_number(intensity);
    for (std::size_t i = 0; i < execs.size(); ++i) {
        p.workload.streams.emplace_back(rate, execs[i], deadlines[i], rewards[i]);
    }
    p.workload.horizon = kSuiteHorizon;
    p.workload.seed = 1;
    p.engine = EngineKind::trace;
    p.replications = kSuiteReplications;
    p.policies = {{"policyz", {"policyz", {{"f", "auto"}}}}, {"redf", {"redf", nlohmann::json::object()}}};
    p.comparisons = {{Comparison::Kind::improvement, "policyz", "redf"}};
    apply(p.workload, p.replications, o);
    return p;
}

std::vector<double> default_intensities() { return {1.2, 1.5, 2.0, 3.0, 4.0}; }

const PolicyRun& ExperimentResult::run(const std::string& label) const
{
    for (const auto& r : runs) {
        if (r.label == label) {
            return r;
        }
    }
    throw std::out_of_range("no policy labelled " + label + " in " + experiment);
}

ExperimentResult run_experiment(const ExperimentPreset& preset, std::size_t threads)
{
    ExperimentResult out;
    out.experiment = preset.id;
    out.comparisons = preset.comparisons;
    RunConfig cfg;
    cfg.name = preset.id;
    cfg.workload = preset.workload;
    cfg.engine = preset.engine;
    cfg.replications = preset.replications;
    cfg.seed = preset.workload.seed;
    for (const auto& entry : preset.policies) {
        const PreparedPolicy policy = prepare_policy(entry.spec, preset.workload.streams, entry.label);
        out.runs.push_back({entry.label, run_replications(cfg, policy, threads), policy.sdp_gain});
    }
    return out;
}

} // namespace zsched::experiments
