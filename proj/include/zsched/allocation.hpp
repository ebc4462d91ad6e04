#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace zsched {

/// A point on the probability simplex: the processor fraction per stream.
class AllocationVector {
public:
    AllocationVector() = default;

    /// Accepts finite non-negative entries whose sum is within 1e-9 of one and
    /// renormalizes them; throws ConfigError otherwise.
    explicit AllocationVector(std::vector<double> f);

    static AllocationVector uniform(std::size_t n);
    static AllocationVector vertex(std::size_t n, std::size_t i);

    std::size_t size() const { return f_.size(); }
    double operator[](std::size_t i) const { return f_[i]; }
    std::span<const double> values() const { return f_; }

    bool operator==(const AllocationVector&) const = default;

private:
    std::vector<double> f_;
};

} // namespace zsched
