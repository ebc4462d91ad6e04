#include <zsched/engine.hpp>

#include <zsched/errors.hpp>

#include <algorithm>

namespace zsched {

FapQueuePolicy::FapQueuePolicy(std::span<const StreamSpec> specs, AllocationVector f)
    : f_(std::move(f))
{
    if (f_.size() != specs.size()) {
        throw ConfigError("allocation vector length does not match the number of streams");
    }
    for (const auto& s : specs) {
        service_.push_back(s.service_rate());
    }
}

void FapQueuePolicy::service_rates(std::span<const std::size_t> lengths, std::span<double> rates) const
{
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        rates[i] = lengths[i] > 0 ? f_[i] * service_[i] : 0.0;
    }
}

PolicyZQueuePolicy::PolicyZQueuePolicy(std::span<const StreamSpec> specs,
                                       std::shared_ptr<const policyz::PriorityTable> table)
    : table_(std::move(table))
{
    if (table_->streams() != specs.size()) {
        throw ConfigError("priority table does not match the number of streams");
    }
    for (const auto& s : specs) {
        service_.push_back(s.service_rate());
    }
}

void PolicyZQueuePolicy::service_rates(std::span<const std::size_t> lengths, std::span<double> rates) const
{
    std::fill(rates.begin(), rates.end(), 0.0);
    if (auto s = policyz::select(*table_, lengths)) {
        rates[*s] = service_[*s];
    }
}

} // namespace zsched
