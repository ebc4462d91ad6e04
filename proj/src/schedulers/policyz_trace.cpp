#include <zsched/schedulers.hpp>

namespace zsched {

PolicyZTraceScheduler::PolicyZTraceScheduler(std::shared_ptr<const policyz::PriorityTable> table)
    : table_(std::move(table))
{
}

SchedulerDecision PolicyZTraceScheduler::decide(PendingSet& p)
{
    const auto lengths = p.queue_lengths();
    const auto stream = policyz::select(*table_, lengths);
    if (!stream) {
        return SchedulerDecision::idle();
    }
    return SchedulerDecision{earliest_deadline_in_stream(p, *stream)};
}

} // namespace zsched
