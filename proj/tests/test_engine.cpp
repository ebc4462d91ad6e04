#include "support.hpp"

#include <zsched/analytic.hpp>
#include <zsched/engine.hpp>
#include <zsched/errors.hpp>
#include <zsched/schedulers.hpp>

#include <doctest.h>

#include <stdexcept>

using namespace zsched;
using testing::job;

namespace {

class LazyScheduler final : public TraceScheduler {
public:
    SchedulerDecision decide(PendingSet&) override { return SchedulerDecision::idle(); }
};

std::vector<double> rewards(const std::vector<StreamSpec>& s)
{
    std::vector<double> out;
    for (const auto& x : s) {
        out.push_back(x.reward());
    }
    return out;
}

} // namespace

TEST_SUITE("engine") {

TEST_CASE("trace engine: completion and expiry of a single job")
{
    EdfScheduler edf;
    EventLog log;
    const std::vector<Job> ok = {job(0, 2, 5, 12, 3)};
    const SimMetrics a = run_trace(ok, 1, edf, 100, &log);
    CHECK(a.revenue_total == 3);
    CHECK(a.busy_time == 5);
    CHECK(a.useful_time == 5);
    REQUIRE(log.events().size() == 2);
    CHECK(log.events()[1].kind == EventKind::completion);
    CHECK(log.events()[1].time == 7);

    const std::vector<Job> late = {job(0, 2, 5, 5, 3)};
    const SimMetrics b = run_trace(late, 1, edf, 100);
    CHECK(b.revenue_total == 0);
    CHECK(b.streams[0].expirations == 1);
    CHECK(b.busy_time == 3);
    CHECK(b.useful_time == 0);
}

TEST_CASE("trace engine: hand-run EDF timeline")
{
    // A(0, 4, dl 10), B(1, 2, dl 4), C(2, 3, dl 12): B preempts A at 1 and
    // finishes at 3, A resumes to 6, C runs to 9.
    const std::vector<Job> jobs = {job(0, 0, 4, 10, 1), job(1, 1, 2, 4, 2), job(0, 2, 3, 12, 4)};
    EdfScheduler edf;
    EventLog log;
    const SimMetrics m = run_trace(jobs, 2, edf, 100, &log);
    CHECK(m.revenue_total == 7);
    std::vector<std::pair<long long, double>> done;
    for (const auto& e : log.events()) {
        if (e.kind == EventKind::completion) {
            done.emplace_back(e.job, e.time);
        }
    }
    REQUIRE(done.size() == 3);
    CHECK(done[0] == std::pair<long long, double>(1, 3));
    CHECK(done[1] == std::pair<long long, double>(0, 6));
    CHECK(done[2] == std::pair<long long, double>(2, 9));
    const std::string csv = log.to_csv();
    CHECK(csv.rfind("time,kind,stream,job\n", 0) == 0);
    CHECK(csv.find("1,preemption,0,0") != std::string::npos);
}

TEST_CASE("trace engine: horizon cuts revenue")
{
    EdfScheduler edf;
    const std::vector<Job> jobs = {job(0, 0, 5, 100)};
    const SimMetrics m = run_trace(jobs, 1, edf, 4);
    CHECK(m.revenue_total == 0);
    CHECK(m.streams[0].still_pending == 1);
    CHECK(m.busy_time == 4);
}

TEST_CASE("trace engine rejects bad traces and idling schedulers")
{
    EdfScheduler edf;
    const std::vector<Job> unsorted = {job(0, 5, 1, 10), job(0, 1, 1, 10)};
    CHECK_THROWS_AS(run_trace(unsorted, 1, edf, 100), TraceError);
    const std::vector<Job> negative = {job(0, 0, -1, 10)};
    CHECK_THROWS_AS(run_trace(negative, 1, edf, 100), TraceError);
    const std::vector<Job> bad_stream = {job(3, 0, 1, 10)};
    CHECK_THROWS_AS(run_trace(bad_stream, 1, edf, 100), TraceError);
    LazyScheduler lazy;
    const std::vector<Job> one = {job(0, 0, 1, 10)};
    CHECK_THROWS_AS(run_trace(one, 1, lazy, 100), std::logic_error);
}

TEST_CASE("trace metrics satisfy their identities")
{
    WorkloadSpec w{testing::two_streams(500, 530, 900, 1.3), 3e5, 77};
    const auto trace = sample_trace(w);
    auto table = std::make_shared<const policyz::PriorityTable>(
        policyz::build_table(w.streams, AllocationVector({0.6, 0.4}), 256));
    std::vector<std::unique_ptr<TraceScheduler>> all;
    all.push_back(std::make_unique<EdfScheduler>());
    all.push_back(std::make_unique<RedfScheduler>());
    all.push_back(std::make_unique<RobustScheduler>(2.0, Knowledge::mean, std::vector<double>{530, 900}));
    all.push_back(std::make_unique<FapTraceScheduler>(AllocationVector({0.6, 0.4}), 5.3));
    all.push_back(std::make_unique<PolicyZTraceScheduler>(table));
    for (auto& s : all) {
        const SimMetrics m = run_trace(trace, 2, *s, w.horizon);
        CHECK_NOTHROW(m.check(rewards(w.streams)));
        CHECK(m.busy_time > 0);
    }
}

TEST_CASE("ctmc engine basics")
{
    const auto specs = testing::e1_streams();
    FapQueuePolicy fap(specs, AllocationVector({0.5, 0.5}));
    const SimMetrics zero = run_ctmc(specs, fap, 0.0, 1);
    CHECK(zero.revenue_total == 0);
    CHECK(zero.streams[0].arrivals == 0);
    const SimMetrics m = run_ctmc(specs, fap, 2e5, 5);
    CHECK_NOTHROW(m.check(rewards(specs)));
    CHECK(m == run_ctmc(specs, fap, 2e5, 5));
}

TEST_CASE("ctmc FAP matches the analytic revenue")
{
    const auto specs = testing::e1_streams();
    const AllocationVector f({0.5, 0.5});
    FapQueuePolicy fap(specs, f);
    const auto r = replicate_ctmc(specs, fap, 1e6, 1, 20);
    const double v = analytic::total_revenue(specs, f.values());
    CHECK(std::abs(r.revenue_rate.mean - v) / v < 0.02);
}

TEST_CASE("one stream: priority index and full allocation coincide, engines agree")
{
    const std::vector<StreamSpec> one = {StreamSpec::from_interarrival(350, 600, 1000, 1.0)};
    const AllocationVector f({1.0});
    FapQueuePolicy fap(one, f);
    PolicyZQueuePolicy z(one, std::make_shared<const policyz::PriorityTable>(policyz::build_table(one, f, 64)));
    const auto a = replicate_ctmc(one, fap, 3e5, 2, 20);
    const auto b = replicate_ctmc(one, z, 3e5, 2, 20);
    CHECK(a.revenue_rate.overlaps(b.revenue_rate));
    CHECK(a.revenue_rate.mean == b.revenue_rate.mean);  // identical rates, identical paths

    WorkloadSpec w{one, 3e5, 2};
    const auto c = replicate_trace(w, [] { return std::make_unique<FapTraceScheduler>(AllocationVector({1.0}), 6.0); }, 20);
    CHECK(a.revenue_rate.overlaps(c.revenue_rate));
    CHECK(c.revenue_rate.contains(analytic::stream_revenue(one[0], 1.0)));
}

TEST_CASE("replication is deterministic and thread-count independent")
{
    WorkloadSpec w{testing::e1_streams(), 1e5, 9};
    auto make = [] { return std::make_unique<EdfScheduler>(); };
    const auto a = replicate_trace(w, make, 6, 1);
    const auto b = replicate_trace(w, make, 6, 4);
    REQUIRE(a.runs.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(a.runs[k] == b.runs[k]);
    }
    CHECK(a.revenue_rate.mean == b.revenue_rate.mean);
    CHECK(a.revenue_rate.ci_lo == b.revenue_rate.ci_lo);
}

TEST_CASE("degenerate workload gives a zero-width interval")
{
    WorkloadSpec w{{StreamSpec(1e-12, 1, 1, 1)}, 100, 3};
    const auto r = replicate_trace(w, [] { return std::make_unique<EdfScheduler>(); }, 2);
    CHECK(r.revenue_rate.ci_hi - r.revenue_rate.ci_lo == 0);
}

TEST_CASE("paired traces: edf and redf per replication on an underloaded workload")
{
    WorkloadSpec w{{StreamSpec(0.02, 2, 1e4, 1), StreamSpec(0.02, 3, 2e4, 2)}, 1e5, 4, DeadlineRule::proportional};
    const auto a = replicate_trace(w, [] { return std::make_unique<EdfScheduler>(); }, 5);
    const auto b = replicate_trace(w, [] { return std::make_unique<RedfScheduler>(); }, 5);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(a.runs[k].revenue_rate == b.runs[k].revenue_rate);
    }
}

TEST_CASE("summary statistics")
{
    const std::vector<double> xs = {1, 2, 3, 4};
    const Summary s = summarize(xs);
    CHECK(s.mean == 2.5);
    CHECK(s.stddev == doctest::Approx(1.2909944487358056));
    // t_{0.975, 3} = 3.182446305284263
    CHECK(s.ci_hi - s.mean == doctest::Approx(3.182446305284263 * 1.2909944487358056 / 2).epsilon(1e-12));
    CHECK(t_quantile_975(19) == doctest::Approx(2.093024054408263).epsilon(1e-12));
}

}
