#include <zsched/schedulers.hpp>

namespace zsched {

SchedulerDecision edf_select(const PendingSet& p)
{
    std::optional<JobId> best;
    for (std::size_t s = 0; s < p.streams(); ++s) {
        for (JobId id : p.queue(s)) {
            if (!best || edf_before(p.job(id), id, p.job(*best), *best)) {
                best = id;
            }
        }
    }
    return SchedulerDecision{best};
}

} // namespace zsched
