#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant picked at runtime.  Both variants perform the same IEEE
// operations in the same order (the build disables FP contraction), so their
// outputs are bit-identical; tests/test_kernels.cpp checks that.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace zsched::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// True if this binary has the variant and the CPU can run it.
bool isa_available(Isa isa);

/// Best variant for this CPU.
Isa detected_isa();

/// Variant used by the library.  Honors force_isa(), then the
/// ZSCHED_FORCE_SCALAR environment variable, then detected_isa().
Isa active_isa();

/// Pins (or with nullopt, un-pins) the active variant.  Throws
/// std::invalid_argument for an unavailable ISA.
void force_isa(std::optional<Isa> isa);

// ---------------------------------------------------------------------------
// Birth-death normalizing series
// ---------------------------------------------------------------------------

/// Partial sums are rescaled by 2^-kScaleBits whenever they exceed
/// 2^kScaleBits; the represented value is mantissa * 2^(scale * kScaleBits).
inline constexpr int kScaleBits = 600;

struct SeriesSum {
    double mantissa = 1.0;
    int scale = 0;
    std::size_t terms = 0;
};

/// Structure-of-arrays batch of series parameters; all spans have equal size.
struct SeriesBatch {
    std::span<const double> arrival;   // r
    std::span<const double> service;   // a
    std::span<const double> deadline;  // d
};

/// Sum over l >= 0 of r^l / prod_{m=1..l} (a + m d), one lane.
/// Stops after the first term l with ratio r/(a + l d) < 1 and
/// term < rel_tol * partial sum.  Returns nullopt if max_terms is reached.
std::optional<SeriesSum> series_sum_scalar(double r, double a, double d, double rel_tol,
                                           std::size_t max_terms);

/// Batched form.  Returns the index of the first lane that hit max_terms, or
/// nullopt when all lanes converged.
std::optional<std::size_t> series_sums(const SeriesBatch& batch, double rel_tol,
                                       std::size_t max_terms, std::span<SeriesSum> out, Isa isa);

std::optional<std::size_t> series_sums(const SeriesBatch& batch, double rel_tol,
                                       std::size_t max_terms, std::span<SeriesSum> out);

// ---------------------------------------------------------------------------
// Relative value iteration sweep for the two-queue uniformized MDP
// ---------------------------------------------------------------------------

/// Rates of the truncated two-stream control problem.  States are (l1, l2) in
/// {0..cap}^2 stored row-major with index l1 * (cap + 1) + l2.
struct TwoQueueRates {
    std::size_t cap = 0;
    double arrival[2] = {0.0, 0.0};
    double service[2] = {0.0, 0.0};
    double deadline[2] = {0.0, 0.0};
    double reward[2] = {0.0, 0.0};
    double uniformization = 0.0;
};

struct SweepStats {
    double diff_min = 0.0;
    double diff_max = 0.0;
};

/// One Bellman backup: next[x] = max_a (1/Lambda) * sum_y rate(x,a,y) (R + h[y]),
/// with idle allowed only at (0,0).  Returns min and max of next - h.
SweepStats bellman_sweep(const TwoQueueRates& m, std::span<const double> h, std::span<double> next,
                         Isa isa);

SweepStats bellman_sweep(const TwoQueueRates& m, std::span<const double> h, std::span<double> next);

// Per-variant entry points; called through the dispatchers above.
namespace detail {
std::optional<std::size_t> series_sums_scalar(const SeriesBatch&, double, std::size_t,
                                              std::span<SeriesSum>);
std::optional<std::size_t> series_sums_avx2(const SeriesBatch&, double, std::size_t,
                                            std::span<SeriesSum>);
SweepStats bellman_sweep_scalar(const TwoQueueRates&, std::span<const double>, std::span<double>);
SweepStats bellman_sweep_avx2(const TwoQueueRates&, std::span<const double>, std::span<double>);
bool avx2_compiled();
} // namespace detail

} // namespace zsched::kernels
