#pragma once

// Priority index that improves on a fractional allocation: a stream with l
// queued jobs is worth v*s minus s times the marginal value of its l-th job
// under the allocation.  Indices are tabulated offline and looked up online.

#include <zsched/allocation.hpp>
#include <zsched/workload.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace zsched::policyz {

inline constexpr std::size_t kDefaultMaxLength = 1024;

/// Index of a stream holding share f with l >= 1 queued jobs, evaluated as
/// v s [1 - (s f pi0(r, s f, d)) / ((s f + l d) pi0(r, s f + l d, d))].
double priority(const StreamSpec& s, double f, std::size_t l);

/// Expected revenue lost by the allocation when the queue drops from l to
/// l - 1 jobs: V(l) - V(l-1) = v s f pi0(r, s f, d) / ((s f + l d) pi0(r, s f + l d, d)).
double value_difference(const StreamSpec& s, double f, std::size_t l);

/// Index assembled as s [v - (V(l) - V(l-1))].  Same quantity as priority(),
/// reached through value_difference(); used to cross-check the two.
double priority_from_value_difference(const StreamSpec& s, double f, std::size_t l);

class PriorityTable {
public:
    /// Index for `stream` at queue length l (l >= 1); lengths beyond the table
    /// return the limit v*s.
    double index(std::size_t stream, std::size_t l) const;

    double limit_value(std::size_t stream) const { return limit_[stream]; }
    std::size_t streams() const { return limit_.size(); }
    std::size_t max_length() const { return max_length_; }
    const AllocationVector& allocation() const { return allocation_; }

    /// Row for one stream, entry k holding the index at l = k + 1.
    std::span<const double> row(std::size_t stream) const;

private:
    friend PriorityTable build_table(std::span<const StreamSpec>, const AllocationVector&, std::size_t);

    std::vector<double> values_;  // streams x max_length, row-major
    std::vector<double> limit_;
    std::size_t max_length_ = 0;
    AllocationVector allocation_;
};

/// Tabulates the index for l = 1..max_length through the batched series
/// kernel.  Throws NumericalError if a row decreases in l or exceeds v*s.
PriorityTable build_table(std::span<const StreamSpec> specs, const AllocationVector& f,
                          std::size_t max_length = kDefaultMaxLength);

/// Nonempty stream with the largest index; ties to the lowest id.  nullopt if
/// every queue is empty.
std::optional<std::size_t> select(const PriorityTable& table, std::span<const std::size_t> queue_lengths);

} // namespace zsched::policyz
