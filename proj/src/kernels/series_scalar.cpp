#include <zsched/kernels.hpp>

namespace zsched::kernels {

namespace {
constexpr double kBig = 0x1p600;
constexpr double kSmall = 0x1p-600;
static_assert(kScaleBits == 600);
} // namespace

std::optional<SeriesSum> series_sum_scalar(double r, double a, double d, double rel_tol,
                                           std::size_t max_terms)
{
    double term = 1.0;
    double sum = 1.0;
    int scale = 0;
    for (std::size_t l = 1; l <= max_terms; ++l) {
        const double denom = a + static_cast<double>(l) * d;
        const double ratio = r / denom;
        term = term * ratio;
        sum = sum + term;
        if (sum > kBig) {
            sum = sum * kSmall;
            term = term * kSmall;
            ++scale;
        }
        if (ratio < 1.0 && term < rel_tol * sum) {
            return SeriesSum{sum, scale, l};
        }
    }
    return std::nullopt;
}

namespace detail {

std::optional<std::size_t> series_sums_scalar(const SeriesBatch& batch, double rel_tol,
                                              std::size_t max_terms, std::span<SeriesSum> out)
{
    for (std::size_t k = 0; k < out.size(); ++k) {
        auto s = series_sum_scalar(batch.arrival[k], batch.service[k], batch.deadline[k], rel_tol, max_terms);
        if (!s) {
            return k;
        }
        out[k] = *s;
    }
    return std::nullopt;
}

} // namespace detail
} // namespace zsched::kernels
