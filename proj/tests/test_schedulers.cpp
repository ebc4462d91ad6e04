#include "support.hpp"

#include <zsched/engine.hpp>
#include <zsched/errors.hpp>
#include <zsched/schedulers.hpp>

#include <doctest.h>

#include <algorithm>

using namespace zsched;
using testing::job;

namespace {

std::vector<double> completion_times(const EventLog& log, std::size_t n)
{
    std::vector<double> t(n, -1);
    for (const auto& e : log.events()) {
        if (e.kind == EventKind::completion) {
            t[static_cast<std::size_t>(e.job)] = e.time;
        }
    }
    return t;
}

// Runs the oldest pending job.
class FifoScheduler final : public TraceScheduler {
public:
    SchedulerDecision decide(PendingSet& p) override
    {
        std::optional<JobId> best;
        for (JobId id : p.pending_jobs()) {
            if (!best || p.job(id).arrival < p.job(*best).arrival) {
                best = id;
            }
        }
        return {best};
    }
};

} // namespace

TEST_SUITE("schedulers") {

TEST_CASE("edf picks the earliest deadline")
{
    const std::vector<Job> jobs = {job(0, 0, 1, 10), job(0, 0, 1, 7), job(0, 0, 1, 22)};
    PendingSet p(jobs, 1);
    CHECK(edf_select(p).is_idle());
    for (JobId i = 0; i < 3; ++i) {
        p.add(i);
    }
    CHECK(edf_select(p).job == 1u);

    const std::vector<Job> tie = {job(1, 2, 1, 9), job(0, 1, 1, 9)};
    PendingSet q(tie, 2);
    q.add(0);
    q.add(1);
    CHECK(edf_select(q).job == 1u);
}

TEST_CASE("redf rejects the lowest reward until feasible")
{
    const std::vector<Job> jobs = {job(0, 0, 10, 5, 1), job(0, 0, 3, 4, 5)};
    PendingSet p(jobs, 1);
    p.add(0);
    p.add(1);
    const auto rejected = redf_admit(p, 1);
    REQUIRE(rejected.size() == 1);
    CHECK(rejected[0] == 0u);
    CHECK(p.is_rejected(0));
    CHECK(p.is_pending(1));
    CHECK(edf_feasible(p));

    const std::vector<Job> cheap = {job(0, 0, 3, 4, 5), job(0, 0, 3, 5, 1)};
    PendingSet q(cheap, 1);
    q.add(0);
    q.add(1);
    const auto r2 = redf_admit(q, 1);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == 1u);

    const std::vector<Job> easy = {job(0, 0, 1, 5, 1), job(0, 0, 1, 9, 1)};
    PendingSet e(easy, 1);
    e.add(0);
    e.add(1);
    CHECK(redf_admit(e, 1).empty());
}

TEST_CASE("redf resurrects the higher reward first")
{
    const std::vector<Job> jobs = {job(0, 0, 4, 5, 2), job(0, 0, 4, 6, 3)};
    PendingSet p(jobs, 1);
    CHECK(redf_resurrect(p).empty());
    p.add(0);
    p.add(1);
    p.reject(0);
    p.reject(1);
    const auto back = redf_resurrect(p);
    REQUIRE(back.size() == 1);
    CHECK(back[0] == 1u);
    CHECK(p.is_rejected(0));
}

TEST_CASE("redf never runs an expired rejected job")
{
    // Job 1 is rejected at t=0 and expires at t=4 while job 0 runs.
    const std::vector<Job> jobs = {job(0, 0, 5, 6, 5), job(0, 0, 3, 4, 1)};
    RedfScheduler redf;
    EventLog log;
    const SimMetrics m = run_trace(jobs, 1, redf, 100, &log);
    CHECK(redf.rejections() == 1);
    CHECK(redf.readmissions() == 0);
    CHECK(m.streams[0].completions == 1);
    CHECK(m.streams[0].expirations == 1);
    CHECK(m.revenue_total == 5);
}

TEST_CASE("robust: lone job then an even phase of odd/(s-1)")
{
    const std::vector<Job> jobs = {job(0, 0, 10, 100)};
    RobustScheduler robust(2.0, Knowledge::exact, {10});
    const SimMetrics m = run_trace(jobs, 1, robust, 1000);
    CHECK(m.revenue_total == 1);
    REQUIRE(robust.phases().size() == 2);
    CHECK(robust.phases()[0].odd);
    CHECK(robust.phases()[0].planned == 10);
    CHECK(robust.phases()[0].end == 10);
    CHECK_FALSE(robust.phases()[1].odd);
    CHECK(robust.phases()[1].planned == 10);
    CHECK_THROWS_AS(RobustScheduler(1.0, Knowledge::exact, {1}), ConfigError);
}

TEST_CASE("robust: a longer arrival preempts during an even phase")
{
    // Odd phase runs A on [0,4]; even phase [4,12] (slack 1.5) starts on B and
    // switches to C when it arrives at 5; at 12 the next odd phase takes B
    // (remaining 4) over C (remaining 2), then the even phase finishes C.
    const std::vector<Job> jobs = {job(0, 0, 4, 100), job(0, 1, 5, 100), job(0, 5, 9, 100)};
    RobustScheduler robust(1.5, Knowledge::exact, {5});
    EventLog log;
    run_trace(jobs, 1, robust, 1000, &log);
    const auto t = completion_times(log, 3);
    CHECK(t[0] == doctest::Approx(4));
    CHECK(t[1] == doctest::Approx(16));
    CHECK(t[2] == doctest::Approx(18));
    bool preempted_at_5 = false;
    for (const auto& e : log.events()) {
        preempted_at_5 |= e.kind == EventKind::preemption && e.time == 5 && e.job == 1;
    }
    CHECK(preempted_at_5);
    for (const auto& ph : robust.phases()) {
        if (!ph.odd && ph.full) {
            CHECK(ph.end - ph.start == doctest::Approx(ph.planned).epsilon(1e-9));
        }
    }
}

TEST_CASE("robust phase accounting on a random trace")
{
    WorkloadSpec w{{StreamSpec(0.004, 50, 100, 50), StreamSpec(0.004, 100, 200, 100),
                    StreamSpec(0.004, 200, 400, 200)},
                   2e5, 17};
    const auto trace = sample_trace(w);
    RobustScheduler robust(2.0, Knowledge::exact, {50, 100, 200});
    run_trace(trace, 3, robust, w.horizon);
    std::size_t checked = 0;
    for (std::size_t k = 0; k < robust.phases().size(); ++k) {
        const auto& ph = robust.phases()[k];
        if (ph.odd && ph.full) {
            CHECK(std::abs(ph.end - ph.start - ph.planned) <= 1e-9 * std::max(1.0, ph.end));
            ++checked;
        }
        if (!ph.odd && ph.full) {
            CHECK(std::abs(ph.end - ph.start - ph.planned) <= 1e-9 * std::max(1.0, ph.end));
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("robust idles on an empty system")
{
    const std::vector<Job> none;
    PendingSet p(none, 1);
    RobustScheduler robust(2.0, Knowledge::mean, {1});
    CHECK(robust.decide(p).is_idle());
}

TEST_CASE("fap runtime with one stream runs jobs back to back")
{
    WorkloadSpec w{{StreamSpec(0.01, 80, 300, 1)}, 1e5, 4};
    const auto trace = sample_trace(w);
    FapTraceScheduler fap(AllocationVector({1.0}), 0.8);
    FifoScheduler fifo;
    const SimMetrics a = run_trace(trace, 1, fap, w.horizon);
    const SimMetrics b = run_trace(trace, 1, fifo, w.horizon);
    CHECK(a.streams[0].completions == b.streams[0].completions);
    CHECK(a.streams[0].expirations == b.streams[0].expirations);
    CHECK(a.revenue_total == b.revenue_total);
    CHECK(a.busy_time == doctest::Approx(b.busy_time).epsilon(1e-9));
    CHECK_THROWS_AS(FapTraceScheduler(AllocationVector({1.0}), 0.0), ConfigError);
}

TEST_CASE("fap runtime converges as the quantum shrinks")
{
    WorkloadSpec w{testing::e1_streams(), 1e6, 8};
    const auto trace = sample_trace(w);
    const AllocationVector f({0.5, 0.5});
    FapTraceScheduler fine(f, 600.0 / 100), coarse(f, 600.0 / 10);
    const double a = run_trace(trace, 2, fine, w.horizon).revenue_rate;
    const double b = run_trace(trace, 2, coarse, w.horizon).revenue_rate;
    CHECK(std::abs(a - b) / a < 0.01);
    CHECK(default_quantum(w.streams) == 6.0);
}

TEST_CASE("redf matches edf when nothing is rejected")
{
    WorkloadSpec w{{StreamSpec(0.05, 2, 1e4, 1), StreamSpec(0.05, 3, 2e4, 2)}, 2e5, 21, DeadlineRule::proportional};
    const auto trace = sample_trace(w);
    EdfScheduler edf;
    RedfScheduler redf;
    const SimMetrics a = run_trace(trace, 2, edf, w.horizon);
    const SimMetrics b = run_trace(trace, 2, redf, w.horizon);
    REQUIRE(redf.rejections() == 0);
    CHECK(a == b);
    // A feasible trace loses nothing under EDF.
    for (const auto& s : a.streams) {
        CHECK(s.expirations == 0);
    }
}

TEST_CASE("policy z trace scheduler follows the index")
{
    const std::vector<StreamSpec> specs = {StreamSpec(0.01, 100, 200, 10.0), StreamSpec(0.01, 100, 200, 1.0)};
    auto table = std::make_shared<const policyz::PriorityTable>(
        policyz::build_table(specs, AllocationVector({0.5, 0.5}), 64));
    const std::vector<Job> jobs = {job(1, 0, 1, 10), job(1, 0, 1, 11), job(0, 0, 1, 50)};
    PendingSet p(jobs, 2);
    for (JobId i = 0; i < 3; ++i) {
        p.add(i);
    }
    PolicyZTraceScheduler z(table);
    CHECK(z.decide(p).job == 2u);
    p.remove(2);
    CHECK(z.decide(p).job == 0u);
}

}
