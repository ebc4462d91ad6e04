#include <zsched/schedulers.hpp>

#include <zsched/errors.hpp>

#include <algorithm>
#include <cmath>

namespace zsched {

double default_quantum(std::span<const StreamSpec> specs)
{
    double e = std::numeric_limits<double>::infinity();
    for (const auto& s : specs) {
        e = std::min(e, s.mean_exec());
    }
    return e / 100.0;
}

FapTraceScheduler::FapTraceScheduler(AllocationVector f, double quantum)
    : f_(std::move(f))
    , quantum_(quantum)
{
    if (!(std::isfinite(quantum) && quantum > 0.0)) {
        throw ConfigError("FAP quantum must be > 0");
    }
}

void FapTraceScheduler::start_cycle(const PendingSet& p)
{
    slices_.clear();
    slice_ = 0;
    slice_started_ = false;
    double total = 0.0;
    std::size_t nonempty = 0;
    for (std::size_t s = 0; s < p.streams(); ++s) {
        if (!p.queue(s).empty()) {
            total += f_[s];
            ++nonempty;
        }
    }
    for (std::size_t s = 0; s < p.streams(); ++s) {
        if (p.queue(s).empty()) {
            continue;
        }
        const double w = total > 0.0 ? f_[s] / total : 1.0 / static_cast<double>(nonempty);
        if (w > 0.0) {
            slices_.push_back(Slice{s, w * quantum_});
        }
    }
}

void FapTraceScheduler::on_timer(PendingSet& p)
{
    if (p.now() >= slice_end_) {
        ++slice_;
        slice_started_ = false;
        slice_end_ = std::numeric_limits<double>::infinity();
    }
}

double FapTraceScheduler::next_timer() const { return slice_end_; }

SchedulerDecision FapTraceScheduler::decide(PendingSet& p)
{
    if (p.empty()) {
        slices_.clear();
        slice_ = 0;
        slice_started_ = false;
        slice_end_ = std::numeric_limits<double>::infinity();
        return SchedulerDecision::idle();
    }
    for (int attempt = 0; attempt < 2; ++attempt) {
        while (slice_ < slices_.size() && p.queue(slices_[slice_].stream).empty()) {
            ++slice_;
            slice_started_ = false;
        }
        if (slice_ < slices_.size()) {
            break;
        }
        start_cycle(p);
    }
    const Slice& cur = slices_.at(slice_);
    if (!slice_started_) {
        slice_started_ = true;
        slice_end_ = p.now() + cur.length;
    }
    return SchedulerDecision::run(p.queue(cur.stream).front());
}

} // namespace zsched
