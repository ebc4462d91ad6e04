#include "support.hpp"

#include <zsched/config.hpp>
#include <zsched/errors.hpp>
#include <zsched/experiments.hpp>
#include <zsched/report.hpp>

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace zsched;
using namespace zsched::experiments;

namespace {

nlohmann::json e1_json()
{
    return nlohmann::json::parse(R"({"streams":[
        {"P":350,"mean_exec":600,"mean_deadline":1000,"value":1.0},
        {"P":350,"mean_exec":600,"mean_deadline":1000,"value":1.0}],"horizon":1e5,"seed":3})");
}

ExperimentResult fake_result(std::vector<double> z, std::vector<double> fap, std::optional<double> gain)
{
    auto runs = [](const std::vector<double>& xs) {
        std::vector<SimMetrics> out;
        for (double x : xs) {
            SimMetrics m;
            m.horizon = 1;
            m.revenue_rate = x;
            m.epu = 0.5;
            out.push_back(m);
        }
        return summarize_runs(out);
    };
    ExperimentResult r;
    r.experiment = "X";
    r.runs.push_back({"policyz", runs(z), std::nullopt});
    r.runs.push_back({"fap", runs(fap), std::nullopt});
    r.comparisons.push_back({Comparison::Kind::improvement, "policyz", "fap"});
    if (gain) {
        r.runs.push_back({"sdp", runs(z), gain});
        r.comparisons.push_back({Comparison::Kind::loss, "policyz", "sdp"});
    }
    return r;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("presets carry the published parameters")
{
    const auto e1 = preset_table1("E1");
    REQUIRE(e1.workload.streams.size() == 2);
    CHECK(e1.workload.streams[0].arrival_rate() == 1.0 / 350);
    CHECK(e1.workload.streams[0].mean_deadline() == 1000);
    CHECK(e1.workload.streams[0].mean_exec() == 600);
    CHECK(e1.workload.streams[1].mean_exec() == 600);
    CHECK(e1.workload.streams[0].reward() == 1.0);
    CHECK(e1.workload.horizon == 900000);
    CHECK(e1.replications == 20);
    CHECK(e1.engine == EngineKind::ctmc);
    CHECK(e1.policies.size() == 3);

    const auto e15 = preset_table1("E15");
    CHECK(e15.workload.streams[0].mean_deadline() == 165);
    CHECK(e15.workload.streams[0].mean_exec() == 400);
    CHECK(e15.workload.streams[1].mean_exec() == 2000);
    CHECK(e15.workload.streams[0].reward() == 1.5);
    CHECK(e15.workload.streams[1].reward() == 1.0);

    const auto e8 = preset_table1("E8");
    CHECK(e8.workload.streams[0].mean_deadline() == 500);
    CHECK(e8.workload.streams[0].mean_exec() == 530);
    CHECK(e8.workload.streams[1].mean_exec() == 900);
    CHECK(e8.workload.streams[0].reward() == 1.3);
    CHECK_THROWS_AS(preset_table1("E16"), ConfigError);

    const Knowledge exact[] = {Knowledge::exact};
    const auto rb = preset_robust(2, 1.5, exact);
    CHECK(rb.workload.streams.size() == 4);
    for (const auto& s : rb.workload.streams) {
        CHECK(s.arrival_rate() == doctest::Approx(0.002).epsilon(1e-12));
        CHECK(s.reward() == s.mean_exec());
        CHECK(s.mean_deadline() == 2 * s.mean_exec());
    }
    CHECK(rb.replications == 50);
    CHECK(rb.workload.horizon == 1e6);
    CHECK_THROWS_AS(preset_robust(1.0, 1.5, exact), ConfigError);
    CHECK_THROWS_AS(preset_robust(2, 0.0, exact), ConfigError);

    const auto rr = preset_redf(RewardModel::random, 2.0);
    const auto rl = preset_redf(RewardModel::linear, 2.0);
    const double random_v[] = {150, 300, 400, 200}, linear_v[] = {450, 300, 200, 100};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rr.workload.streams[i].reward() == random_v[i]);
        CHECK(rl.workload.streams[i].reward() == linear_v[i]);
        CHECK(rr.workload.streams[i].arrival_rate() == doctest::Approx(2.0 / 850).epsilon(1e-12));
    }
    CHECK_THROWS_AS(parse_reward_model("uniform"), ConfigError);
}

TEST_CASE("presets are pure functions of id and overrides")
{
    Overrides o;
    o.seed = 99;
    o.replications = 3;
    const auto a = preset_table1("E7", o), b = preset_table1("E7", o);
    CHECK(nlohmann::json(workload_to_json(a.workload)) == workload_to_json(b.workload));
    CHECK(a.replications == 3);
    CHECK(a.workload.seed == 99);
}

TEST_CASE("report arithmetic and shape")
{
    CHECK(improvement(1.15, 1.0) == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(loss(1.0, 0.97) == doctest::Approx(3.0).epsilon(1e-12));

    const auto rows = report_rows(fake_result({1.1, 1.2, 1.15}, {1.0, 1.0, 1.0}, 1.2));
    REQUIRE(rows.size() == 5);
    CHECK(rows[3].row == "improvement");
    CHECK(rows[3].mean == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(rows[3].ci95_lo < 15.0);
    CHECK(rows[4].row == "loss");
    CHECK(rows[4].mean == doctest::Approx(100 * (1.2 - 1.15) / 1.2).epsilon(1e-12));

    ExperimentResult single = fake_result({1.0, 2.0}, {1.0, 1.0}, std::nullopt);
    single.runs.pop_back();
    CHECK(report_rows(single).size() == 1);
}

TEST_CASE("report round-trips exactly")
{
    const auto rows = report_rows(fake_result({0.1, 1.0 / 3, 2.0 / 7}, {0.09, 0.3, 1.0 / 9}, 0.5));
    const auto back = parse_report(to_csv(rows));
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].experiment == rows[i].experiment);
        CHECK(back[i].row == rows[i].row);
        CHECK(back[i].policy == rows[i].policy);
        CHECK(back[i].baseline == rows[i].baseline);
        CHECK(back[i].n == rows[i].n);
        CHECK(back[i].mean == rows[i].mean);
        CHECK(back[i].stddev == rows[i].stddev);
        CHECK(back[i].ci95_lo == rows[i].ci95_lo);
        CHECK(back[i].ci95_hi == rows[i].ci95_hi);
        CHECK((back[i].epu == rows[i].epu || (std::isnan(back[i].epu) && std::isnan(rows[i].epu))));
    }
    CHECK_THROWS_AS(parse_report("nope\n"), ConfigError);
    CHECK_THROWS_AS(parse_report(report_header() + "\nX,summary,a,,1,zz,0,0,0,0\n"), ConfigError);
}

TEST_CASE("run config validation")
{
    nlohmann::json j = {{"workload", e1_json()}, {"policy", {{"name", "policyz"}, {"l_max", 64}}}, {"engine", "ctmc"},
                        {"replications", 2}};
    const RunConfig cfg = run_config_from_json(j, ".");
    CHECK(cfg.engine == EngineKind::ctmc);
    CHECK(cfg.replications == 2);
    CHECK(cfg.seed == 3);
    const auto p = prepare_policy(cfg.policy, cfg.workload.streams);
    CHECK(p.trace);
    CHECK(p.ctmc);
    CHECK(run_replications(cfg, p).runs.size() == 2);

    auto bad = j;
    bad["policy"] = {{"name", "policyz"}, {"slack", 2}};
    CHECK_THROWS_AS(prepare_policy(run_config_from_json(bad, ".").policy, cfg.workload.streams), ConfigError);
    bad["policy"] = {{"name", "lottery"}};
    CHECK_THROWS_AS(prepare_policy(run_config_from_json(bad, ".").policy, cfg.workload.streams), ConfigError);
    bad["policy"] = {{"name", "robust"}, {"slack", 0.5}};
    CHECK_THROWS_AS(prepare_policy(run_config_from_json(bad, ".").policy, cfg.workload.streams), ConfigError);
    bad["policy"] = {{"name", "fap"}, {"f", {0.2, 0.2}}};
    CHECK_THROWS_AS(prepare_policy(run_config_from_json(bad, ".").policy, cfg.workload.streams), ConfigError);

    auto missing = j;
    missing.erase("workload");
    missing["workload_file"] = "does-not-exist.json";
    CHECK_THROWS_AS(run_config_from_json(missing, "."), ConfigError);
    auto both = j;
    both["workload_file"] = "w.json";
    CHECK_THROWS_AS(run_config_from_json(both, "."), ConfigError);
    auto typo = j;
    typo["replicates"] = 3;
    CHECK_THROWS_AS(run_config_from_json(typo, "."), ConfigError);

    // Engine/policy mismatches.
    RunConfig trace_sdp = cfg;
    trace_sdp.engine = EngineKind::trace;
    const auto sdp = prepare_policy(PolicySpec{"sdp", {{"cap", 60}}}, cfg.workload.streams);
    CHECK_THROWS_AS(run_replications(trace_sdp, sdp), ConfigError);
    const auto edf = prepare_policy(PolicySpec{"edf", nlohmann::json::object()}, cfg.workload.streams);
    CHECK_THROWS_AS(run_replications(cfg, edf), ConfigError);
}

TEST_CASE("workload files resolve relative to the run config")
{
    const auto dir = std::filesystem::temp_directory_path() / "zsched-test-config";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "w.json") << e1_json().dump();
    std::ofstream(dir / "run.json") << R"({"workload_file":"w.json","policy":{"name":"edf"},"replications":1})";
    const RunConfig cfg = load_run_config((dir / "run.json").string());
    CHECK(cfg.workload.streams.size() == 2);
    CHECK(cfg.engine == EngineKind::trace);
    std::filesystem::remove_all(dir);
}

}
