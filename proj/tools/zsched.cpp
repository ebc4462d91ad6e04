#include <zsched/config.hpp>
#include <zsched/errors.hpp>
#include <zsched/experiments.hpp>
#include <zsched/fap.hpp>
#include <zsched/policyz.hpp>
#include <zsched/report.hpp>
#include <zsched/sdp.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace zsched;

namespace {

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw ConfigError("cannot write " + path);
    }
}

void warn_if_underloaded(const std::vector<StreamSpec>& streams, const std::string& policy)
{
    if ((policy == "policyz" || policy == "fap") && utilization(streams) <= 1.0) {
        std::cerr << "zsched: warning: utilization " << utilization(streams)
                  << " <= 1; EDF is the policy of choice without overload\n";
    }
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}


int cmd_fap(const std::string& path, double tol)
{
    const WorkloadSpec w = load_workload(path);
    const fap::FapResult r = fap::optimize(w.streams, tol);
    std::ostringstream out;
    for (std::size_t i = 0; i < r.f_star.size(); ++i) {
        out << "f" << i + 1 << ',';
    }
    out << "v_star,evaluations,local_optima\n";
    for (std::size_t i = 0; i < r.f_star.size(); ++i) {
        out << num(r.f_star[i]) << ',';
    }
    out << num(r.v_star) << ',' << r.evaluations << ',' << r.local_optima << '\n';
    std::cout << out.str();
    return 0;
}

int cmd_ztable(const std::string& path, std::size_t l_max, const std::string& out_path)
{
    const WorkloadSpec w = load_workload(path);
    warn_if_underloaded(w.streams, "policyz");
    const fap::FapResult r = fap::optimize(w.streams);
    const policyz::PriorityTable table = policyz::build_table(w.streams, r.f_star, l_max);
    std::ostringstream out;
    out << "stream,l,z\n";
    for (std::size_t i = 0; i < table.streams(); ++i) {
        for (std::size_t l = 1; l <= table.max_length(); ++l) {
            out << i + 1 << ',' << l << ',' << num(table.index(i, l)) << '\n';
        }
    }
    emit(out_path, out.str());
    return 0;
}

int cmd_sdp(const std::string& path, std::size_t cap, double tol, const std::string& policy_out)
{
    const WorkloadSpec w = load_workload(path);
    const sdp::SdpModel model(w.streams, cap);
    const sdp::SdpSolution sol = sdp::solve(model, tol);
    std::cout << "gain,iterations,cap\n" << num(sol.gain) << ',' << sol.iterations << ',' << sol.cap << '\n';
    if (!policy_out.empty()) {
        std::ostringstream out;
        out << "l1,l2,action\n";
        for (std::size_t l1 = 0; l1 <= sol.cap; ++l1) {
            for (std::size_t l2 = 0; l2 <= sol.cap; ++l2) {
                const sdp::Action a = sol.action(l1, l2);
                out << l1 << ',' << l2 << ','
                    << (a == sdp::Action::serve_first ? "serve1" : a == sdp::Action::serve_second ? "serve2" : "idle")
                    << '\n';
            }
        }
        emit(policy_out, out.str());
    }
    return 0;
}

int cmd_simulate(const std::string& path, const std::optional<std::string>& rule, std::string out_path,
                 const std::string& runs_path, std::optional<std::uint64_t> seed, std::optional<std::size_t> reps,
                 std::size_t threads)
{
    RunConfig cfg = load_run_config(path);
    if (rule) {
        cfg.workload.deadline_rule = parse_deadline_rule(*rule);
    }
    if (seed) {
        cfg.seed = cfg.workload.seed = *seed;
    }
    if (reps) {
        cfg.replications = *reps;
    }
    if (out_path.empty()) {
        out_path = cfg.output;
    }
    warn_if_underloaded(cfg.workload.streams, cfg.policy.name);
    const PreparedPolicy policy = prepare_policy(cfg.policy, cfg.workload.streams);
    experiments::ExperimentResult result;
    result.experiment = cfg.name;
    result.runs.push_back({policy.label, run_replications(cfg, policy, threads), policy.sdp_gain});
    emit(out_path, to_csv(report_rows(result)));
    if (!runs_path.empty()) {
        std::ostringstream runs;
        write_runs(runs, policy.label, result.runs.front().result, cfg.seed);
        emit(runs_path, runs.str());
    }
    return 0;
}

struct ExperimentArgs {
    std::string which;
    std::string ids;
    std::vector<double> intensities;
    std::vector<double> slacks = {2.0, 4.0};
    std::string knowledge = "both";
    std::string model = "both";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::optional<double> horizon;
    std::string out;
    std::size_t threads = 0;
};

int cmd_experiment(const ExperimentArgs& a, const std::optional<std::string>& rule)
{
    experiments::Overrides o;
    o.seed = a.seed;
    o.replications = a.reps;
    o.horizon = a.horizon;
    if (rule) {
        o.deadline_rule = parse_deadline_rule(*rule);
    }
    std::vector<experiments::ExperimentPreset> presets;
    if (a.which == "table1" || a.which == "all-table1") {
        std::vector<std::string> ids;
        if (a.which == "all-table1" || a.ids.empty()) {
            for (const auto& row : experiments::table1_rows()) {
                ids.emplace_back(row.id);
            }
        }
        if (a.which == "table1" && !a.ids.empty()) {
            ids = split_list(a.ids);
        }
        for (const auto& id : ids) {
            presets.push_back(experiments::preset_table1(id, o));
        }
    } else if (a.which == "robust") {
        std::vector<Knowledge> modes;
        if (a.knowledge == "both") {
            modes = {Knowledge::exact, Knowledge::mean};
        } else {
            modes = {parse_knowledge(a.knowledge)};
        }
        const auto intensities = a.intensities.empty() ? experiments::default_intensities() : a.intensities;
        for (double slack : a.slacks) {
            for (double x : intensities) {
                presets.push_back(experiments::preset_robust(slack, x, modes, o));
            }
        }
    } else if (a.which == "redf") {
        std::vector<experiments::RewardModel> models;
        if (a.model == "both") {
            models = {experiments::RewardModel::random, experiments::RewardModel::linear};
        } else {
            models = {experiments::parse_reward_model(a.model)};
        }
        const auto intensities = a.intensities.empty() ? experiments::default_intensities() : a.intensities;
        for (auto m : models) {
            for (double x : intensities) {
                presets.push_back(experiments::preset_redf(m, x, o));
            }
        }
    } else {
        throw ConfigError("unknown experiment: " + a.which + " (expected table1|robust|redf|all-table1)");
    }

    std::ostringstream out;
    out << report_header() << '\n';
    for (const auto& p : presets) {
        std::cerr << "zsched: running " << p.id << '\n';
        write_report(out, report_rows(experiments::run_experiment(p, a.threads)), false);
    }
    emit(a.out, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Revenue-maximizing scheduling of soft real-time job streams under overload"};
    app.require_subcommand(1);
    std::optional<std::string> rule;
    app.add_option("--deadline-rule", rule, "Deadline offsets for trace workloads: exponential|proportional")
        ->check(CLI::IsMember({"exponential", "proportional"}));

    std::string workload_path;
    double fap_tol = fap::kDefaultTolerance;
    auto* fap_cmd = app.add_subcommand("fap", "Optimal fractional allocation of a workload");
    fap_cmd->add_option("workload", workload_path, "Workload JSON")->required();
    fap_cmd->add_option("--tol", fap_tol, "Search tolerance on the allocation");

    std::size_t l_max = policyz::kDefaultMaxLength;
    std::string out_path;
    auto* z_cmd = app.add_subcommand("ztable", "Policy Z priority table at the optimal allocation");
    z_cmd->add_option("workload", workload_path, "Workload JSON")->required();
    z_cmd->add_option("--lmax", l_max, "Largest tabulated queue length")->check(CLI::PositiveNumber);
    z_cmd->add_option("--out", out_path, "CSV output path (default stdout)");

    std::size_t cap = sdp::kDefaultCap;
    double sdp_tol = sdp::kDefaultTolerance;
    std::string policy_out;
    auto* sdp_cmd = app.add_subcommand("sdp", "Optimal two-stream policy by relative value iteration");
    sdp_cmd->add_option("workload", workload_path, "Workload JSON with two streams")->required();
    sdp_cmd->add_option("--cap", cap, "Queue length cap")->check(CLI::PositiveNumber);
    sdp_cmd->add_option("--tol", sdp_tol, "Span stopping tolerance")->check(CLI::PositiveNumber);
    sdp_cmd->add_option("--policy-out", policy_out, "Write the policy table as CSV");

    std::string run_path;
    std::string runs_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::size_t threads = 0;
    auto* sim_cmd = app.add_subcommand("simulate", "Replicated simulation of one run config");
    sim_cmd->add_option("run", run_path, "Run config JSON")->required();
    sim_cmd->add_option("--out", out_path, "CSV output path (default: config output, else stdout)");
    sim_cmd->add_option("--runs", runs_path, "Also write per-replication metrics");
    sim_cmd->add_option("--seed", seed, "Base seed");
    sim_cmd->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--threads", threads, "Worker threads (0: all cores)");

    ExperimentArgs ex;
    auto* ex_cmd = app.add_subcommand("experiment", "Run a preset campaign");
    ex_cmd->add_option("which", ex.which, "table1|robust|redf|all-table1")
        ->required()
        ->check(CLI::IsMember({"table1", "robust", "redf", "all-table1"}));
    ex_cmd->add_option("--ids", ex.ids, "Comma-separated Table 1 rows, e.g. E1,E7");
    ex_cmd->add_option("--intensity", ex.intensities, "Utilization sweep")->delimiter(',');
    ex_cmd->add_option("--slack", ex.slacks, "ROBUST slack factors")->delimiter(',');
    ex_cmd->add_option("--knowledge", ex.knowledge, "ROBUST knowledge: exact|mean|both")
        ->check(CLI::IsMember({"exact", "mean", "both"}));
    ex_cmd->add_option("--model", ex.model, "REDF reward model: random|linear|both")
        ->check(CLI::IsMember({"random", "linear", "both"}));
    ex_cmd->add_option("--seed", ex.seed, "Base seed");
    ex_cmd->add_option("--reps", ex.reps, "Replications")->check(CLI::PositiveNumber);
    ex_cmd->add_option("--horizon", ex.horizon, "Simulated time per replication")->check(CLI::PositiveNumber);
    ex_cmd->add_option("--out", ex.out, "CSV output path (default stdout)");
    ex_cmd->add_option("--threads", ex.threads, "Worker threads (0: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << "zsched: error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*fap_cmd) {
            return cmd_fap(workload_path, fap_tol);
        }
        if (*z_cmd) {
            return cmd_ztable(workload_path, l_max, out_path);
        }
        if (*sdp_cmd) {
            return cmd_sdp(workload_path, cap, sdp_tol, policy_out);
        }
        if (*sim_cmd) {
            return cmd_simulate(run_path, rule, out_path, runs_path, seed, reps, threads);
        }
        return cmd_experiment(ex, rule);
    } catch (const ConfigError& e) {
        std::cerr << "zsched: config error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "zsched: numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "zsched: error: " << e.what() << '\n';
        return 1;
    }
}
