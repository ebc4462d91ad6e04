#include <zsched/analytic.hpp>

#include <zsched/errors.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace zsched::analytic {

QueueParams::QueueParams(double arrival_rate, double aggregate_service, double deadline_rate)
    : arrival_(arrival_rate)
    , service_(aggregate_service)
    , deadline_(deadline_rate)
{
    if (!(std::isfinite(arrival_rate) && arrival_rate >= 0.0) ||
        !(std::isfinite(aggregate_service) && aggregate_service >= 0.0) ||
        !(std::isfinite(deadline_rate) && deadline_rate > 0.0)) {
        std::ostringstream os;
        os << "invalid queue parameters r=" << arrival_rate << " a=" << aggregate_service
           << " d=" << deadline_rate << " (need r >= 0, a >= 0, d > 0)";
        throw ConfigError(os.str());
    }
}

kernels::SeriesSum normalizer(const QueueParams& p, double tol)
{
    auto s = kernels::series_sum_scalar(p.arrival_rate(), p.aggregate_service(), p.deadline_rate(), tol,
                                        kMaxTerms);
    if (!s) {
        std::ostringstream os;
        os << "pi0 series did not converge within " << kMaxTerms << " terms (r=" << p.arrival_rate()
           << ", a=" << p.aggregate_service() << ", d=" << p.deadline_rate() << ")";
        throw NumericalError(os.str());
    }
    return *s;
}

double pi0_from(const kernels::SeriesSum& s)
{
    const double v = 1.0 / s.mantissa;
    if (s.scale == 0) {
        return v;
    }
    return std::max(std::ldexp(v, -kernels::kScaleBits * s.scale), std::numeric_limits<double>::denorm_min());
}

double pi0_ratio(const kernels::SeriesSum& num, const kernels::SeriesSum& den)
{
    return std::ldexp(den.mantissa / num.mantissa, kernels::kScaleBits * (den.scale - num.scale));
}

double pi0(const QueueParams& p, double tol) { return pi0_from(normalizer(p, tol)); }

std::vector<double> stationary_prefix(const QueueParams& p, std::size_t max_len, double tol)
{
    // Terms carry the series' power-of-two scale so that queues whose pi0
    // underflows still get their bulk probabilities right.
    const kernels::SeriesSum sum = normalizer(p, tol);
    const double big = std::ldexp(1.0, kernels::kScaleBits);
    const double small = std::ldexp(1.0, -kernels::kScaleBits);
    std::vector<double> out(max_len + 1);
    double term = 1.0;
    int scale = 0;
    out[0] = pi0_from(sum);
    for (std::size_t l = 1; l <= max_len; ++l) {
        term *= p.arrival_rate() / (p.aggregate_service() + static_cast<double>(l) * p.deadline_rate());
        if (term > big) {
            term *= small;
            ++scale;
        } else if (term < small && scale > 0) {
            term *= big;
            --scale;
        }
        out[l] = std::ldexp(term / sum.mantissa, kernels::kScaleBits * (scale - sum.scale));
    }
    return out;
}

std::vector<double> stationary_distribution(const QueueParams& p, double tol)
{
    return stationary_prefix(p, normalizer(p, tol).terms, tol);
}

double stationary(const QueueParams& p, std::size_t l, double tol) { return stationary_prefix(p, l, tol)[l]; }

double stream_revenue(const StreamSpec& s, double f)
{
    if (!(f >= 0.0 && f <= 1.0)) {
        throw ConfigError("allocation fraction must lie in [0, 1]");
    }
    const double a = s.service_rate() * f;
    return s.reward() * a * (1.0 - pi0(QueueParams(s.arrival_rate(), a, s.deadline_rate())));
}

double total_revenue(std::span<const StreamSpec> specs, std::span<const double> f)
{
    if (specs.size() != f.size()) {
        throw ConfigError("allocation vector length does not match the number of streams");
    }
    double v = 0.0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        v += stream_revenue(specs[i], f[i]);
    }
    return v;
}

void pi0_batch(std::span<const double> r, std::span<const double> a, std::span<const double> d,
               std::span<double> out, double tol)
{
    std::vector<kernels::SeriesSum> sums(out.size());
    if (auto bad = kernels::series_sums({r, a, d}, tol, kMaxTerms, sums)) {
        std::ostringstream os;
        os << "pi0 series did not converge for lane " << *bad;
        throw NumericalError(os.str());
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = pi0_from(sums[k]);
    }
}

} // namespace zsched::analytic
