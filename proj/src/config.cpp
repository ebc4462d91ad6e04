#include <zsched/config.hpp>

#include <zsched/errors.hpp>
#include <zsched/fap.hpp>
#include <zsched/policyz.hpp>
#include <zsched/schedulers.hpp>
#include <zsched/sdp.hpp>

#include <fstream>
#include <set>

namespace zsched {

EngineKind parse_engine(const std::string& name)
{
    if (name == "trace") {
        return EngineKind::trace;
    }
    if (name == "ctmc") {
        return EngineKind::ctmc;
    }
    throw ConfigError("unknown engine: " + name + " (expected trace|ctmc)");
}

std::string to_string(EngineKind e) { return e == EngineKind::trace ? "trace" : "ctmc"; }

namespace {

void allow_only(const nlohmann::json& params, const std::string& policy, std::set<std::string> keys)
{
    keys.insert("name");
    for (const auto& [k, v] : params.items()) {
        if (!keys.contains(k)) {
            throw ConfigError("policy '" + policy + "' has no parameter '" + k + "'");
        }
    }
}

template <typename T>
T get_param(const nlohmann::json& params, const char* key, T fallback)
{
    if (!params.contains(key)) {
        return fallback;
    }
    try {
        return params[key].get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("policy parameter '") + key + "' has the wrong type");
    }
}

AllocationVector resolve_allocation(const nlohmann::json& params, std::span<const StreamSpec> streams)
{
    if (!params.contains("f") || (params["f"].is_string() && params["f"].get<std::string>() == "auto")) {
        return fap::optimize(streams).f_star;
    }
    if (!params["f"].is_array()) {
        throw ConfigError("policy parameter 'f' must be \"auto\" or an array of fractions");
    }
    AllocationVector f(params["f"].get<std::vector<double>>());
    if (f.size() != streams.size()) {
        throw ConfigError("allocation vector length does not match the number of streams");
    }
    return f;
}

} // namespace

PreparedPolicy prepare_policy(const PolicySpec& spec, std::span<const StreamSpec> streams, const std::string& label)
{
    PreparedPolicy out;
    out.label = label.empty() ? spec.name : label;
    const auto& params = spec.params;
    const std::vector<StreamSpec> specs(streams.begin(), streams.end());

    if (spec.name == "edf") {
        allow_only(params, spec.name, {});
        out.trace = [] { return std::make_unique<EdfScheduler>(); };
    } else if (spec.name == "redf") {
        allow_only(params, spec.name, {});
        out.trace = [] { return std::make_unique<RedfScheduler>(); };
    } else if (spec.name == "robust") {
        allow_only(params, spec.name, {"slack", "knowledge"});
        const double slack = get_param(params, "slack", 2.0);
        const Knowledge knowledge = parse_knowledge(get_param<std::string>(params, "knowledge", "exact"));
        std::vector<double> means;
        for (const auto& s : specs) {
            means.push_back(s.mean_exec());
        }
        RobustScheduler probe(slack, knowledge, means);  // validates slack
        out.trace = [slack, knowledge, means] { return std::make_unique<RobustScheduler>(slack, knowledge, means); };
    } else if (spec.name == "fap") {
        allow_only(params, spec.name, {"f", "quantum"});
        const AllocationVector f = resolve_allocation(params, specs);
        const double quantum = get_param(params, "quantum", default_quantum(specs));
        FapTraceScheduler probe(f, quantum);  // validates quantum
        out.trace = [f, quantum] { return std::make_unique<FapTraceScheduler>(f, quantum); };
        out.ctmc = std::make_shared<FapQueuePolicy>(specs, f);
    } else if (spec.name == "policyz") {
        allow_only(params, spec.name, {"f", "l_max"});
        const AllocationVector f = resolve_allocation(params, specs);
        const auto l_max = get_param<std::size_t>(params, "l_max", policyz::kDefaultMaxLength);
        auto table = std::make_shared<const policyz::PriorityTable>(policyz::build_table(specs, f, l_max));
        out.trace = [table] { return std::make_unique<PolicyZTraceScheduler>(table); };
        out.ctmc = std::make_shared<PolicyZQueuePolicy>(specs, table);
    } else if (spec.name == "sdp") {
        allow_only(params, spec.name, {"cap", "tol"});
        const sdp::SdpModel model(specs, get_param<std::size_t>(params, "cap", sdp::kDefaultCap));
        sdp::SdpSolution sol = sdp::solve(model, get_param(params, "tol", sdp::kDefaultTolerance));
        out.sdp_gain = sol.gain;
        out.ctmc = std::make_shared<sdp::SdpQueuePolicy>(model, std::move(sol));
    } else {
        throw ConfigError("unknown policy: " + spec.name + " (expected edf|redf|robust|fap|policyz|sdp)");
    }
    return out;
}

RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir)
{
    if (!j.is_object()) {
        throw ConfigError("run config must be a JSON object");
    }
    static const std::set<std::string> known = {"name",         "workload", "workload_file", "policy", "engine",
                                                "horizon",      "replications", "seed",      "output"};
    for (const auto& [k, v] : j.items()) {
        if (!known.contains(k)) {
            throw ConfigError("unknown run config key: " + k);
        }
    }
    RunConfig cfg;
    cfg.name = j.value("name", std::string("run"));
    if (j.contains("workload") == j.contains("workload_file")) {
        throw ConfigError("run config needs exactly one of \"workload\" and \"workload_file\"");
    }
    if (j.contains("workload")) {
        cfg.workload = workload_from_json(j["workload"]);
    } else {
        const auto path = base_dir / j["workload_file"].get<std::string>();
        if (!std::filesystem::exists(path)) {
            throw ConfigError("workload file does not exist: " + path.string());
        }
        cfg.workload = load_workload(path.string());
    }
    if (!j.contains("policy") || !j["policy"].is_object() || !j["policy"].contains("name")) {
        throw ConfigError("run config needs a policy object with a \"name\"");
    }
    cfg.policy.name = j["policy"]["name"].get<std::string>();
    cfg.policy.params = j["policy"];
    cfg.engine = parse_engine(j.value("engine", std::string("trace")));
    if (j.contains("horizon")) {
        cfg.workload.horizon = j["horizon"].get<double>();
    }
    cfg.seed = j.value("seed", cfg.workload.seed);
    cfg.workload.seed = cfg.seed;
    cfg.replications = j.value("replications", std::size_t{20});
    cfg.output = j.value("output", std::string());
    if (cfg.replications == 0) {
        throw ConfigError("replications must be >= 1");
    }
    cfg.workload.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open run config: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return run_config_from_json(j, std::filesystem::path(path).parent_path());
}

ReplicationResult run_replications(const RunConfig& cfg, const PreparedPolicy& policy, std::size_t threads)
{
    if (cfg.engine == EngineKind::ctmc) {
        if (!policy.ctmc) {
            throw ConfigError("policy '" + policy.label + "' needs job-level information; use engine \"trace\"");
        }
        return replicate_ctmc(cfg.workload.streams, *policy.ctmc, cfg.workload.horizon, cfg.seed, cfg.replications,
                              threads);
    }
    if (!policy.trace) {
        throw ConfigError("policy '" + policy.label + "' only runs on engine \"ctmc\"");
    }
    return replicate_trace(cfg.workload, policy.trace, cfg.replications, threads);
}

} // namespace zsched
