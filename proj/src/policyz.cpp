#include <zsched/policyz.hpp>

#include <zsched/analytic.hpp>
#include <zsched/errors.hpp>

#include <sstream>

namespace zsched::policyz {

namespace {

void check_args(double f, std::size_t l)
{
    if (l == 0) {
        throw ConfigError("priority index needs a queue length >= 1");
    }
    if (!(f >= 0.0 && f <= 1.0)) {
        throw ConfigError("allocation fraction must lie in [0, 1]");
    }
}

} // namespace

double priority(const StreamSpec& s, double f, std::size_t l)
{
    check_args(f, l);
    const double sf = s.service_rate() * f;
    const double shifted = sf + static_cast<double>(l) * s.deadline_rate();
    const auto base = analytic::normalizer(analytic::QueueParams(s.arrival_rate(), sf, s.deadline_rate()));
    const auto longer = analytic::normalizer(analytic::QueueParams(s.arrival_rate(), shifted, s.deadline_rate()));
    const double bracket = (sf / shifted) * analytic::pi0_ratio(base, longer);
    return s.reward() * s.service_rate() * (1.0 - bracket);
}

double value_difference(const StreamSpec& s, double f, std::size_t l)
{
    check_args(f, l);
    const double rate = s.service_rate() * f;
    const double p_empty = analytic::pi0(analytic::QueueParams(s.arrival_rate(), rate, s.deadline_rate()));
    const double death = rate + static_cast<double>(l) * s.deadline_rate();
    const double p_shadow_empty = analytic::pi0(analytic::QueueParams(s.arrival_rate(), death, s.deadline_rate()));
    return (s.reward() * rate * p_empty) / (death * p_shadow_empty);
}

double priority_from_value_difference(const StreamSpec& s, double f, std::size_t l)
{
    return s.service_rate() * (s.reward() - value_difference(s, f, l));
}

double PriorityTable::index(std::size_t stream, std::size_t l) const
{
    if (l == 0 || l > max_length_) {
        return l == 0 ? 0.0 : limit_[stream];
    }
    return values_[stream * max_length_ + (l - 1)];
}

std::span<const double> PriorityTable::row(std::size_t stream) const
{
    return std::span<const double>(values_).subspan(stream * max_length_, max_length_);
}

PriorityTable build_table(std::span<const StreamSpec> specs, const AllocationVector& f, std::size_t max_length)
{
    if (max_length == 0) {
        throw ConfigError("priority table needs l_max >= 1");
    }
    if (specs.size() != f.size()) {
        throw ConfigError("allocation vector length does not match the number of streams");
    }
    const std::size_t n = specs.size();
    PriorityTable t;
    t.max_length_ = max_length;
    t.allocation_ = f;
    t.values_.resize(n * max_length);
    t.limit_.resize(n);

    // Lane 0 of each stream is the unshifted series, lanes 1..max_length the
    // series with the death rate raised by l*d.
    const std::size_t lanes = max_length + 1;
    std::vector<double> r(lanes), a(lanes), d(lanes);
    std::vector<kernels::SeriesSum> sums(lanes);
    for (std::size_t i = 0; i < n; ++i) {
        const StreamSpec& s = specs[i];
        const double sf = s.service_rate() * f[i];
        for (std::size_t k = 0; k < lanes; ++k) {
            r[k] = s.arrival_rate();
            a[k] = k == 0 ? sf : sf + static_cast<double>(k) * s.deadline_rate();
            d[k] = s.deadline_rate();
        }
        if (auto bad = kernels::series_sums({r, a, d}, analytic::kDefaultTolerance, analytic::kMaxTerms, sums)) {
            std::ostringstream os;
            os << "pi0 series did not converge for stream " << i << " at l=" << *bad;
            throw NumericalError(os.str());
        }
        const double limit = s.reward() * s.service_rate();
        t.limit_[i] = limit;
        double prev = -1.0;
        for (std::size_t l = 1; l <= max_length; ++l) {
            const double bracket = (sf / a[l]) * analytic::pi0_ratio(sums[0], sums[l]);
            const double z = limit * (1.0 - bracket);
            if (!(z <= limit) || z < prev) {
                std::ostringstream os;
                os << "priority table invariant violated for stream " << i << " at l=" << l << " (z=" << z
                   << ", previous=" << prev << ", limit=" << limit << ")";
                throw NumericalError(os.str());
            }
            t.values_[i * max_length + (l - 1)] = z;
            prev = z;
        }
    }
    return t;
}

std::optional<std::size_t> select(const PriorityTable& table, std::span<const std::size_t> queue_lengths)
{
    if (queue_lengths.size() != table.streams()) {
        throw ConfigError("queue length vector does not match the priority table");
    }
    std::optional<std::size_t> best;
    double best_z = 0.0;
    for (std::size_t i = 0; i < queue_lengths.size(); ++i) {
        if (queue_lengths[i] == 0) {
            continue;
        }
        const double z = table.index(i, queue_lengths[i]);
        if (!best || z > best_z) {
            best = i;
            best_z = z;
        }
    }
    return best;
}

} // namespace zsched::policyz
