#include <zsched/engine.hpp>

#include <zsched/errors.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

namespace zsched {

namespace {

void validate_trace(std::span<const Job> trace, std::size_t streams)
{
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const Job& j = trace[k];
        std::ostringstream why;
        if (j.stream >= streams) {
            why << "stream id " << j.stream << " out of range";
        } else if (!(std::isfinite(j.arrival) && j.arrival >= 0.0)) {
            why << "negative or non-finite arrival";
        } else if (j.arrival < prev) {
            why << "arrivals not sorted";
        } else if (!(std::isfinite(j.exec_total) && j.exec_total > 0.0)) {
            why << "execution requirement must be > 0";
        } else if (!(std::isfinite(j.deadline_abs) && j.deadline_abs > j.arrival)) {
            why << "deadline must lie after arrival";
        } else if (!(std::isfinite(j.reward) && j.reward >= 0.0)) {
            why << "reward must be >= 0";
        }
        if (!why.str().empty()) {
            throw TraceError("malformed trace at job " + std::to_string(k) + ": " + why.str());
        }
        prev = j.arrival;
    }
}

using DeadlineEntry = std::pair<double, JobId>;

} // namespace

SimMetrics run_trace(std::span<const Job> trace, std::size_t streams, TraceScheduler& scheduler, double horizon,
                     EventLog* log)
{
    validate_trace(trace, streams);
    if (!(std::isfinite(horizon) && horizon >= 0.0)) {
        throw ConfigError("horizon must be finite and >= 0");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();

    SimMetrics m;
    m.horizon = horizon;
    m.streams.resize(streams);
    PendingSet p(trace, streams);
    std::priority_queue<DeadlineEntry, std::vector<DeadlineEntry>, std::greater<>> deadlines;
    std::vector<bool> live(trace.size(), false);
    std::size_t next_arrival = 0;
    std::optional<JobId> running;
    auto note = [&](EventKind kind, JobId id) {
        if (log != nullptr) {
            log->record(p.now(), kind, trace[id].stream, static_cast<long long>(id));
        }
    };

    for (;;) {
        while (!deadlines.empty() && !live[deadlines.top().second]) {
            deadlines.pop();
        }
        const double t_arrival =
            next_arrival < trace.size() && trace[next_arrival].arrival < horizon ? trace[next_arrival].arrival : inf;
        const double t_completion = running ? p.now() + p.remaining(*running) : inf;
        const double t_expiry = deadlines.empty() ? inf : deadlines.top().first;
        const double t_timer = scheduler.next_timer();
        const double t = std::min({t_arrival, t_completion, t_expiry, t_timer});
        if (t > horizon) {
            // Nothing else happens before the horizon: run out the clock.
            const double dt = horizon - p.now();
            if (running) {
                p.advance_running(dt);
                m.busy_time += dt;
            }
            p.set_now(horizon);
            break;
        }
        if (t < p.now()) {
            throw std::logic_error("scheduler timer lies in the past");
        }

        const double dt = t - p.now();
        if (running) {
            p.advance_running(dt);
            m.busy_time += dt;
        }
        p.set_now(t);
        bool handled = false;

        while (!deadlines.empty() && deadlines.top().first <= t) {
            const JobId id = deadlines.top().second;
            deadlines.pop();
            if (!live[id]) {
                continue;
            }
            live[id] = false;
            if (running == id) {
                running.reset();
            }
            p.remove(id);
            ++m.streams[trace[id].stream].expirations;
            note(EventKind::expiry, id);
            scheduler.on_expiry(p, id);
            handled = true;
        }

        if (running && t == t_completion) {
            const JobId id = *running;
            running.reset();
            live[id] = false;
            p.mark_done(id);
            p.remove(id);
            StreamCounters& c = m.streams[trace[id].stream];
            ++c.completions;
            c.revenue += trace[id].reward;
            m.useful_time += trace[id].exec_total;
            note(EventKind::completion, id);
            scheduler.on_completion(p, id);
            handled = true;
        }

        while (next_arrival < trace.size() && trace[next_arrival].arrival == t && t < horizon) {
            const JobId id = next_arrival++;
            live[id] = true;
            p.add(id);
            deadlines.emplace(trace[id].deadline_abs, id);
            ++m.streams[trace[id].stream].arrivals;
            note(EventKind::arrival, id);
            scheduler.on_arrival(p, id);
            handled = true;
        }

        if (t == t_timer) {
            scheduler.on_timer(p);
            handled = true;
        }
        if (!handled) {
            throw std::logic_error("trace engine made no progress at t=" + std::to_string(t));
        }
        if (t >= horizon) {
            break;
        }

        // Jobs rejected by the scheduler hooks are no longer eligible to run.
        if (running && !p.is_pending(*running)) {
            running.reset();
        }
        const SchedulerDecision d = scheduler.decide(p);
        if (d.is_idle()) {
            if (!p.empty()) {
                throw std::logic_error("scheduler idled with pending jobs");
            }
        } else if (!p.is_pending(*d.job)) {
            throw std::logic_error("scheduler picked a job that is not pending");
        }
        if (running && d.job != running) {
            note(EventKind::preemption, *running);
        }
        running = d.job;
        p.set_running(running);
    }

    for (std::size_t id = 0; id < trace.size(); ++id) {
        if (live[id]) {
            ++m.streams[trace[id].stream].still_pending;
        }
    }
    m.finalize();
    return m;
}

} // namespace zsched
