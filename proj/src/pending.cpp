#include <zsched/pending.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace zsched {

PendingSet::PendingSet(std::span<const Job> jobs, std::size_t streams)
    : jobs_(jobs)
    , remaining_(jobs.size())
    , status_(jobs.size(), Status::future)
    , queues_(streams)
{
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        remaining_[i] = jobs[i].exec_total;
    }
}

std::vector<std::size_t> PendingSet::queue_lengths() const
{
    std::vector<std::size_t> out(queues_.size());
    for (std::size_t i = 0; i < queues_.size(); ++i) {
        out[i] = queues_[i].size();
    }
    return out;
}

std::vector<JobId> PendingSet::pending_jobs() const
{
    std::vector<JobId> out;
    out.reserve(pending_count_);
    for (const auto& q : queues_) {
        out.insert(out.end(), q.begin(), q.end());
    }
    return out;
}

void PendingSet::add(JobId id)
{
    status_[id] = Status::pending;
    queues_[jobs_[id].stream].push_back(id);
    ++pending_count_;
}

namespace {

void erase_value(std::vector<JobId>& v, JobId id)
{
    auto it = std::find(v.begin(), v.end(), id);
    if (it == v.end()) {
        throw std::logic_error("pending set: job not found");
    }
    v.erase(it);
}

void insert_by_arrival(std::vector<JobId>& q, JobId id)
{
    // Trace positions are arrival-ordered.
    q.insert(std::lower_bound(q.begin(), q.end(), id), id);
}

} // namespace

void PendingSet::remove(JobId id)
{
    if (status_[id] == Status::pending) {
        erase_value(queues_[jobs_[id].stream], id);
        --pending_count_;
    } else if (status_[id] == Status::rejected) {
        erase_value(rejected_, id);
    } else {
        throw std::logic_error("pending set: removing a job that is not live");
    }
    status_[id] = Status::gone;
    if (running_ == id) {
        running_.reset();
    }
}

void PendingSet::reject(JobId id)
{
    if (status_[id] != Status::pending) {
        throw std::logic_error("pending set: only pending jobs can be rejected");
    }
    erase_value(queues_[jobs_[id].stream], id);
    --pending_count_;
    status_[id] = Status::rejected;
    rejected_.push_back(id);
    if (running_ == id) {
        running_.reset();
    }
}

void PendingSet::readmit(JobId id)
{
    if (status_[id] != Status::rejected) {
        throw std::logic_error("pending set: only rejected jobs can be readmitted");
    }
    erase_value(rejected_, id);
    status_[id] = Status::pending;
    insert_by_arrival(queues_[jobs_[id].stream], id);
    ++pending_count_;
}

void PendingSet::advance_running(double dt)
{
    if (running_) {
        remaining_[*running_] = std::max(0.0, remaining_[*running_] - dt);
    }
}

bool edf_before(const Job& a, JobId ia, const Job& b, JobId ib)
{
    if (a.deadline_abs != b.deadline_abs) {
        return a.deadline_abs < b.deadline_abs;
    }
    if (a.arrival != b.arrival) {
        return a.arrival < b.arrival;
    }
    if (a.stream != b.stream) {
        return a.stream < b.stream;
    }
    return ia < ib;
}

std::optional<JobId> earliest_deadline_in_stream(const PendingSet& p, std::size_t stream)
{
    std::optional<JobId> best;
    for (JobId id : p.queue(stream)) {
        if (!best || edf_before(p.job(id), id, p.job(*best), *best)) {
            best = id;
        }
    }
    return best;
}

double TraceScheduler::next_timer() const { return std::numeric_limits<double>::infinity(); }

} // namespace zsched
