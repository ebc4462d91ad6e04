#include <zsched/kernels.hpp>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace zsched::kernels {

namespace {

// -1: not forced; otherwise the Isa value.
std::atomic<int> forced{-1};

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

} // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa)
{
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
        return detail::avx2_compiled() && cpu_has_avx2();
    }
    return false;
}

Isa detected_isa() { return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

Isa active_isa()
{
    const int f = forced.load(std::memory_order_relaxed);
    if (f >= 0) {
        return static_cast<Isa>(f);
    }
    if (const char* env = std::getenv("ZSCHED_FORCE_SCALAR"); env != nullptr && *env != '\0' && *env != '0') {
        return Isa::scalar;
    }
    return detected_isa();
}

void force_isa(std::optional<Isa> isa)
{
    if (isa && !isa_available(*isa)) {
        throw std::invalid_argument("ISA not available: " + std::string(to_string(*isa)));
    }
    forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

std::optional<std::size_t> series_sums(const SeriesBatch& batch, double rel_tol,
                                       std::size_t max_terms, std::span<SeriesSum> out, Isa isa)
{
    if (batch.service.size() != batch.arrival.size() || batch.deadline.size() != batch.arrival.size() ||
        out.size() != batch.arrival.size()) {
        throw std::invalid_argument("series_sums: lane count mismatch");
    }
    return isa == Isa::avx2 ? detail::series_sums_avx2(batch, rel_tol, max_terms, out)
                            : detail::series_sums_scalar(batch, rel_tol, max_terms, out);
}

std::optional<std::size_t> series_sums(const SeriesBatch& batch, double rel_tol,
                                       std::size_t max_terms, std::span<SeriesSum> out)
{
    return series_sums(batch, rel_tol, max_terms, out, active_isa());
}

SweepStats bellman_sweep(const TwoQueueRates& m, std::span<const double> h, std::span<double> next,
                         Isa isa)
{
    const std::size_t n = (m.cap + 1) * (m.cap + 1);
    if (h.size() != n || next.size() != n) {
        throw std::invalid_argument("bellman_sweep: value array has wrong size");
    }
    return isa == Isa::avx2 ? detail::bellman_sweep_avx2(m, h, next)
                            : detail::bellman_sweep_scalar(m, h, next);
}

SweepStats bellman_sweep(const TwoQueueRates& m, std::span<const double> h, std::span<double> next)
{
    return bellman_sweep(m, h, next, active_isa());
}

} // namespace zsched::kernels
