#include <zsched/workload.hpp>

#include <zsched/errors.hpp>
#include <zsched/rng.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace zsched {

namespace {

void require_positive(double x, const char* name)
{
    if (!(std::isfinite(x) && x > 0.0)) {
        std::ostringstream os;
        os << "stream parameter '" << name << "' must be finite and > 0, got " << x;
        throw ConfigError(os.str());
    }
}

} // namespace

StreamSpec::StreamSpec(double arrival_rate, double mean_exec, double mean_deadline, double reward)
    : arrival_rate_(arrival_rate)
    , mean_exec_(mean_exec)
    , mean_deadline_(mean_deadline)
    , reward_(reward)
{
    require_positive(arrival_rate, "rate");
    require_positive(mean_exec, "mean_exec");
    require_positive(mean_deadline, "mean_deadline");
    require_positive(reward, "value");
}

StreamSpec StreamSpec::from_interarrival(double mean_interarrival, double mean_exec,
                                         double mean_deadline, double reward)
{
    require_positive(mean_interarrival, "P");
    return StreamSpec(1.0 / mean_interarrival, mean_exec, mean_deadline, reward);
}

void WorkloadSpec::validate() const
{
    if (streams.empty()) {
        throw ConfigError("workload needs at least one stream");
    }
    if (!(std::isfinite(horizon) && horizon > 0.0)) {
        throw ConfigError("workload horizon must be finite and > 0");
    }
}

double utilization(std::span<const StreamSpec> streams)
{
    return std::accumulate(streams.begin(), streams.end(), 0.0,
                           [](double acc, const StreamSpec& s) { return acc + s.load(); });
}

double utilization(const WorkloadSpec& spec) { return utilization(spec.streams); }

bool is_overloaded(const WorkloadSpec& spec) { return utilization(spec) > 1.0; }

std::vector<Job> sample_trace(const WorkloadSpec& spec)
{
    spec.validate();
    std::vector<Job> jobs;
    for (std::size_t id = 0; id < spec.streams.size(); ++id) {
        const StreamSpec& s = spec.streams[id];
        Rng gaps(derive_seed(spec.seed, id, static_cast<std::uint64_t>(SampleKind::interarrival)));
        Rng execs(derive_seed(spec.seed, id, static_cast<std::uint64_t>(SampleKind::execution)));
        Rng deadlines(derive_seed(spec.seed, id, static_cast<std::uint64_t>(SampleKind::deadline)));
        const double slack = s.mean_deadline() / s.mean_exec();

        double t = gaps.exponential_rate(s.arrival_rate());
        while (t < spec.horizon) {
            Job job;
            job.stream = id;
            job.arrival = t;
            job.exec_total = execs.exponential_mean(s.mean_exec());
            double offset = spec.deadline_rule == DeadlineRule::exponential
                                ? deadlines.exponential_mean(s.mean_deadline())
                                : slack * job.exec_total;
            // An offset below the resolution of `t` would collapse the deadline
            // onto the arrival instant.
            while (t + offset <= t) {
                offset = deadlines.exponential_mean(s.mean_deadline());
            }
            job.deadline_abs = t + offset;
            job.reward = s.reward();
            jobs.push_back(job);
            t += gaps.exponential_rate(s.arrival_rate());
        }
    }
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        return a.arrival < b.arrival || (a.arrival == b.arrival && a.stream < b.stream);
    });
    return jobs;
}

WorkloadSpec workload_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("streams") || !j["streams"].is_array()) {
        throw ConfigError("workload JSON needs a \"streams\" array");
    }
    WorkloadSpec spec;
    for (const auto& js : j["streams"]) {
        const bool has_rate = js.contains("rate");
        const bool has_p = js.contains("P");
        if (has_rate == has_p) {
            throw ConfigError("each stream needs exactly one of \"rate\" and \"P\"");
        }
        for (const char* key : {"mean_exec", "mean_deadline", "value"}) {
            if (!js.contains(key) || !js[key].is_number()) {
                throw ConfigError(std::string("stream is missing numeric \"") + key + "\"");
            }
        }
        const double e = js["mean_exec"].get<double>();
        const double d = js["mean_deadline"].get<double>();
        const double v = js["value"].get<double>();
        spec.streams.push_back(has_rate ? StreamSpec(js["rate"].get<double>(), e, d, v)
                                        : StreamSpec::from_interarrival(js["P"].get<double>(), e, d, v));
    }
    spec.horizon = j.value("horizon", 1.0e6);
    spec.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("deadline_rule")) {
        spec.deadline_rule = parse_deadline_rule(j["deadline_rule"].get<std::string>());
    }
    spec.validate();
    return spec;
}

WorkloadSpec load_workload(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open workload file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return workload_from_json(j);
}

nlohmann::json workload_to_json(const WorkloadSpec& spec)
{
    nlohmann::json streams = nlohmann::json::array();
    for (const auto& s : spec.streams) {
        streams.push_back({{"rate", s.arrival_rate()},
                           {"mean_exec", s.mean_exec()},
                           {"mean_deadline", s.mean_deadline()},
                           {"value", s.reward()}});
    }
    return {{"streams", streams},
            {"horizon", spec.horizon},
            {"seed", spec.seed},
            {"deadline_rule", to_string(spec.deadline_rule)}};
}

DeadlineRule parse_deadline_rule(const std::string& name)
{
    if (name == "exponential") {
        return DeadlineRule::exponential;
    }
    if (name == "proportional") {
        return DeadlineRule::proportional;
    }
    throw ConfigError("unknown deadline rule: " + name);
}

std::string to_string(DeadlineRule rule)
{
    return rule == DeadlineRule::exponential ? "exponential" : "proportional";
}

} // namespace zsched
