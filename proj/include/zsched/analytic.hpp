#pragma once

// Closed-form quantities of the birth-death queue with reneging that models one
// stream under a fixed processor share: births at rate r, deaths at rate
// a + l*d in state l.

#include <zsched/kernels.hpp>
#include <zsched/workload.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace zsched::analytic {

inline constexpr double kDefaultTolerance = 1e-14;
inline constexpr std::size_t kMaxTerms = 1'000'000;

class QueueParams {
public:
    /// Throws ConfigError unless r >= 0, a >= 0, d > 0 (all finite).
    QueueParams(double arrival_rate, double aggregate_service, double deadline_rate);

    double arrival_rate() const { return arrival_; }
    double aggregate_service() const { return service_; }
    double deadline_rate() const { return deadline_; }

private:
    double arrival_;
    double service_;
    double deadline_;
};

/// Normalizing series of the stationary law; see kernels::series_sum_scalar.
/// Throws NumericalError when the term cap is reached.
kernels::SeriesSum normalizer(const QueueParams& p, double tol = kDefaultTolerance);

/// Probability that the queue is empty.  In (0, 1].
double pi0(const QueueParams& p, double tol = kDefaultTolerance);

/// pi0 from an already evaluated normalizer.
double pi0_from(const kernels::SeriesSum& s);

/// pi0(num) / pi0(den) without under- or overflow of the individual terms.
double pi0_ratio(const kernels::SeriesSum& num, const kernels::SeriesSum& den);

/// Stationary probability of queue length l.
double stationary(const QueueParams& p, std::size_t l, double tol = kDefaultTolerance);

/// Stationary probabilities up to the length where the pi0 series was
/// truncated, so the entries sum to 1 up to the series tolerance.
std::vector<double> stationary_distribution(const QueueParams& p, double tol = kDefaultTolerance);

/// Stationary probabilities for l = 0..max_len, built by ratio recursion.
std::vector<double> stationary_prefix(const QueueParams& p, std::size_t max_len,
                                      double tol = kDefaultTolerance);

/// Long-run revenue rate of one stream given the processor fraction f.
double stream_revenue(const StreamSpec& s, double f);

/// Sum of stream revenues; throws ConfigError on a size mismatch.
double total_revenue(std::span<const StreamSpec> specs, std::span<const double> f);

/// Batched pi0 via the active SIMD kernel; throws NumericalError on a lane
/// hitting the term cap.
void pi0_batch(std::span<const double> r, std::span<const double> a, std::span<const double> d,
               std::span<double> out, double tol = kDefaultTolerance);

} // namespace zsched::analytic
