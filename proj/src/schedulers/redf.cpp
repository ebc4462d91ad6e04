#include <zsched/schedulers.hpp>

#include <algorithm>

namespace zsched {

bool edf_feasible(const PendingSet& p)
{
    std::vector<JobId> ids = p.pending_jobs();
    std::sort(ids.begin(), ids.end(),
              [&](JobId a, JobId b) { return edf_before(p.job(a), a, p.job(b), b); });
    double t = p.now();
    for (JobId id : ids) {
        t += p.remaining(id);
        if (t > p.job(id).deadline_abs) {
            return false;
        }
    }
    return true;
}

std::vector<JobId> redf_admit(PendingSet& p, JobId /*arriving*/)
{
    std::vector<JobId> rejected;
    while (!p.empty() && !edf_feasible(p)) {
        const std::vector<JobId> ids = p.pending_jobs();
        JobId victim = ids.front();
        for (JobId id : ids) {
            const Job& a = p.job(id);
            const Job& v = p.job(victim);
            if (a.reward < v.reward ||
                (a.reward == v.reward &&
                 (a.deadline_abs > v.deadline_abs || (a.deadline_abs == v.deadline_abs && id > victim)))) {
                victim = id;
            }
        }
        p.reject(victim);
        rejected.push_back(victim);
    }
    return rejected;
}

std::vector<JobId> redf_resurrect(PendingSet& p)
{
    std::vector<JobId> order = p.rejected();
    std::sort(order.begin(), order.end(), [&](JobId a, JobId b) {
        const Job& ja = p.job(a);
        const Job& jb = p.job(b);
        if (ja.reward != jb.reward) {
            return ja.reward > jb.reward;
        }
        if (ja.deadline_abs != jb.deadline_abs) {
            return ja.deadline_abs < jb.deadline_abs;
        }
        return a < b;
    });
    std::vector<JobId> back;
    for (JobId id : order) {
        if (p.job(id).deadline_abs <= p.now()) {
            continue;
        }
        p.readmit(id);
        if (!edf_feasible(p)) {
            p.reject(id);
            break;
        }
        back.push_back(id);
    }
    return back;
}

void RedfScheduler::on_arrival(PendingSet& p, JobId id)
{
    for (JobId r : redf_admit(p, id)) {
        ++rejections_;
        if (log_ != nullptr) {
            log_->record(p.now(), EventKind::rejection, p.job(r).stream, static_cast<long long>(r));
        }
    }
}

void RedfScheduler::on_completion(PendingSet& p, JobId) { resurrect(p); }

void RedfScheduler::resurrect(PendingSet& p)
{
    for (JobId r : redf_resurrect(p)) {
        ++readmissions_;
        if (log_ != nullptr) {
            log_->record(p.now(), EventKind::readmission, p.job(r).stream, static_cast<long long>(r));
        }
    }
}

SchedulerDecision RedfScheduler::decide(PendingSet& p)
{
    // An idle processor is spare capacity just like an early completion.
    if (p.empty() && !p.rejected().empty()) {
        resurrect(p);
    }
    return edf_select(p);
}

} // namespace zsched
