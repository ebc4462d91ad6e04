#include <zsched/schedulers.hpp>

#include <zsched/errors.hpp>

#include <algorithm>

namespace zsched {

Knowledge parse_knowledge(const std::string& name)
{
    if (name == "exact") {
        return Knowledge::exact;
    }
    if (name == "mean") {
        return Knowledge::mean;
    }
    throw ConfigError("unknown ROBUST knowledge mode: " + name + " (expected exact|mean)");
}

std::string to_string(Knowledge k) { return k == Knowledge::exact ? "exact" : "mean"; }

RobustScheduler::RobustScheduler(double slack, Knowledge knowledge, std::vector<double> mean_exec)
    : slack_(slack)
    , knowledge_(knowledge)
    , mean_exec_(std::move(mean_exec))
{
    if (!(slack > 1.0)) {
        throw ConfigError("ROBUST needs a slack factor > 1");
    }
}

double RobustScheduler::length_estimate(const PendingSet& p, JobId id) const
{
    if (knowledge_ == Knowledge::exact) {
        return p.remaining(id);
    }
    return std::max(mean_exec_.at(p.job(id).stream) - p.executed(id), 0.0);
}

bool RobustScheduler::eligible(const PendingSet& p, JobId id) const
{
    return p.now() + length_estimate(p, id) <= p.job(id).deadline_abs;
}

std::optional<JobId> RobustScheduler::longest(const PendingSet& p) const
{
    std::optional<JobId> best;
    bool best_eligible = false;
    double best_len = 0.0;
    for (std::size_t s = 0; s < p.streams(); ++s) {
        for (JobId id : p.queue(s)) {
            const bool ok = eligible(p, id);
            const double len = length_estimate(p, id);
            bool better = false;
            if (!best || ok != best_eligible) {
                better = !best || ok;
            } else if (len != best_len) {
                better = len > best_len;
            } else {
                better = edf_before(p.job(id), id, p.job(*best), *best);
            }
            if (better) {
                best = id;
                best_eligible = ok;
                best_len = len;
            }
        }
    }
    return best;
}

void RobustScheduler::start_odd(PendingSet& p)
{
    current_ = longest(p);
    phase_ = Phase::odd;
    phase_start_ = p.now();
    even_end_ = std::numeric_limits<double>::infinity();
    phases_.push_back(PhaseRecord{true, p.now(), p.now(), length_estimate(p, *current_), false});
}

void RobustScheduler::close_even(double now, bool full)
{
    PhaseRecord& rec = phases_.back();
    rec.end = now;
    rec.full = full;
}

void RobustScheduler::on_terminated(PendingSet& p, JobId id)
{
    if (current_ != id) {
        return;
    }
    current_.reset();
    if (phase_ != Phase::odd) {
        return;
    }
    PhaseRecord& odd = phases_.back();
    odd.end = p.now();
    odd.full = p.remaining(id) == 0.0;
    const double length = p.now() - phase_start_;
    phase_ = Phase::even;
    phase_start_ = p.now();
    even_end_ = p.now() + length / (slack_ - 1.0);
    phases_.push_back(PhaseRecord{false, p.now(), p.now(), length / (slack_ - 1.0), false});
}

void RobustScheduler::on_arrival(PendingSet& p, JobId id)
{
    if (phase_ == Phase::even && current_ && eligible(p, id) &&
        length_estimate(p, id) > length_estimate(p, *current_)) {
        current_ = id;
    }
}

void RobustScheduler::on_timer(PendingSet& p)
{
    if (phase_ != Phase::even || p.now() < even_end_) {
        return;
    }
    close_even(p.now(), true);
    phase_ = Phase::none;
    current_.reset();
    even_end_ = std::numeric_limits<double>::infinity();
}

double RobustScheduler::next_timer() const { return even_end_; }

SchedulerDecision RobustScheduler::decide(PendingSet& p)
{
    if (p.empty()) {
        if (phase_ == Phase::even) {
            close_even(p.now(), false);
        }
        // An odd phase cannot be open here: its job would still be pending.
        phase_ = Phase::none;
        current_.reset();
        even_end_ = std::numeric_limits<double>::infinity();
        return SchedulerDecision::idle();
    }
    if (phase_ == Phase::none) {
        start_odd(p);
    } else if (phase_ == Phase::even && (!current_ || !p.is_pending(*current_))) {
        current_ = longest(p);
    }
    return SchedulerDecision{current_};
}

} // namespace zsched
