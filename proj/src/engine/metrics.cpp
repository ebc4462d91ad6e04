#include <zsched/metrics.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace zsched {

void SimMetrics::finalize()
{
    revenue_total = 0.0;
    for (const auto& s : streams) {
        revenue_total += s.revenue;
    }
    revenue_rate = horizon > 0.0 ? revenue_total / horizon : 0.0;
    epu = horizon > 0.0 ? useful_time / horizon : 0.0;
}

void SimMetrics::check(const std::vector<double>& rewards) const
{
    auto fail = [](const std::string& what) { throw std::logic_error("metrics identity violated: " + what); };
    if (rewards.size() != streams.size()) {
        fail("reward list size");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < streams.size(); ++i) {
        const auto& s = streams[i];
        if (s.arrivals != s.completions + s.expirations + s.still_pending) {
            fail("conservation for stream " + std::to_string(i));
        }
        if (std::abs(s.revenue - static_cast<double>(s.completions) * rewards[i]) >
            1e-9 * std::max(1.0, std::abs(s.revenue))) {
            fail("revenue for stream " + std::to_string(i));
        }
        total += s.revenue;
    }
    if (std::abs(total - revenue_total) > 1e-9 * std::max(1.0, std::abs(total))) {
        fail("revenue total");
    }
    const double slack = 1e-9 * std::max(1.0, horizon);
    if (useful_time < -slack || useful_time > busy_time + slack || busy_time > horizon + slack) {
        fail("0 <= useful <= busy <= horizon");
    }
}

std::string to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::arrival:
        return "arrival";
    case EventKind::completion:
        return "completion";
    case EventKind::expiry:
        return "expiry";
    case EventKind::preemption:
        return "preemption";
    case EventKind::phase:
        return "phase";
    case EventKind::rejection:
        return "rejection";
    case EventKind::readmission:
        return "readmission";
    }
    return "unknown";
}

std::string EventLog::to_csv() const
{
    std::ostringstream os;
    os << "time,kind,stream,job\n";
    char buf[64];
    for (const auto& e : events_) {
        std::snprintf(buf, sizeof buf, "%.17g", e.time);
        os << buf << ',' << to_string(e.kind) << ',' << e.stream << ',' << e.job << '\n';
    }
    return os.str();
}

} // namespace zsched
