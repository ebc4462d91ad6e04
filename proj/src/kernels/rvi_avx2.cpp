#include "two_queue_backup.hpp"

#include <algorithm>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace zsched::kernels::detail {

#if defined(__x86_64__)

namespace {

struct Extrema {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double x)
    {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
};

void scalar_state(const TwoQueueRates& m, std::span<const double> h, std::span<double> next,
                  std::size_t i, std::size_t j, double inv_lambda, Extrema& ext)
{
    const std::size_t idx = i * (m.cap + 1) + j;
    const double v = best_value(backup_state(m, h.data(), i, j)) * inv_lambda;
    next[idx] = v;
    ext.add(v - h[idx]);
}

} // namespace

__attribute__((target("avx2"))) SweepStats
bellman_sweep_avx2(const TwoQueueRates& m, std::span<const double> h, std::span<double> next)
{
    const std::size_t cap = m.cap;
    const std::size_t w = cap + 1;
    const double inv_lambda = 1.0 / m.uniformization;
    Extrema ext;

    const __m256d r1 = _mm256_set1_pd(m.arrival[0]);
    const __m256d r2 = _mm256_set1_pd(m.arrival[1]);
    const __m256d s1 = _mm256_set1_pd(m.service[0]);
    const __m256d s2 = _mm256_set1_pd(m.service[1]);
    const __m256d v1 = _mm256_set1_pd(m.reward[0]);
    const __m256d v2 = _mm256_set1_pd(m.reward[1]);
    const __m256d d2 = _mm256_set1_pd(m.deadline[1]);
    const __m256d lam = _mm256_set1_pd(m.uniformization);
    const __m256d inv = _mm256_set1_pd(inv_lambda);
    const __m256d offs = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d vmax = _mm256_set1_pd(-std::numeric_limits<double>::infinity());

    for (std::size_t i = 0; i < w; ++i) {
        scalar_state(m, h, next, i, 0, inv_lambda, ext);
        if (cap == 0) {
            continue;
        }
        const double* self = h.data() + i * w;
        const double* up = i < cap ? self + w : self;
        const double* down = i > 0 ? self - w : self;
        double* dst = next.data() + i * w;
        const double id1_s = static_cast<double>(i) * m.deadline[0];
        const __m256d id1 = _mm256_set1_pd(id1_s);
        const __m256d out_row = _mm256_set1_pd((m.arrival[0] + m.arrival[1]) + id1_s);

        std::size_t j = 1;
        for (; j + 4 <= cap; j += 4) {
            const __m256d hv = _mm256_loadu_pd(self + j);
            const __m256d a1 = _mm256_loadu_pd(up + j);
            const __m256d a2 = _mm256_loadu_pd(self + j + 1);
            const __m256d x1 = _mm256_loadu_pd(down + j);
            const __m256d x2 = _mm256_loadu_pd(self + j - 1);
            const __m256d jv = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(j)), offs);
            const __m256d jd2 = _mm256_mul_pd(jv, d2);

            __m256d base = _mm256_mul_pd(r1, a1);
            base = _mm256_add_pd(base, _mm256_mul_pd(r2, a2));
            base = _mm256_add_pd(base, _mm256_mul_pd(id1, x1));
            base = _mm256_add_pd(base, _mm256_mul_pd(jd2, x2));
            const __m256d stay = _mm256_sub_pd(lam, _mm256_add_pd(out_row, jd2));

            __m256d q2 = _mm256_add_pd(base, _mm256_mul_pd(s2, _mm256_add_pd(v2, x2)));
            q2 = _mm256_add_pd(q2, _mm256_mul_pd(_mm256_sub_pd(stay, s2), hv));
            __m256d best = q2;
            if (i > 0) {
                __m256d q1 = _mm256_add_pd(base, _mm256_mul_pd(s1, _mm256_add_pd(v1, x1)));
                q1 = _mm256_add_pd(q1, _mm256_mul_pd(_mm256_sub_pd(stay, s1), hv));
                best = _mm256_blendv_pd(q1, q2, _mm256_cmp_pd(q2, q1, _CMP_GT_OQ));
            }
            const __m256d v = _mm256_mul_pd(best, inv);
            _mm256_storeu_pd(dst + j, v);
            const __m256d diff = _mm256_sub_pd(v, hv);
            vmin = _mm256_min_pd(vmin, diff);
            vmax = _mm256_max_pd(vmax, diff);
        }
        for (; j <= cap; ++j) {
            scalar_state(m, h, next, i, j, inv_lambda, ext);
        }
    }

    alignas(32) double lo[4], hi[4];
    _mm256_store_pd(lo, vmin);
    _mm256_store_pd(hi, vmax);
    for (int k = 0; k < 4; ++k) {
        ext.lo = std::min(ext.lo, lo[k]);
        ext.hi = std::max(ext.hi, hi[k]);
    }
    return SweepStats{ext.lo, ext.hi};
}

#else

SweepStats bellman_sweep_avx2(const TwoQueueRates& m, std::span<const double> h, std::span<double> next)
{
    return bellman_sweep_scalar(m, h, next);
}

#endif

} // namespace zsched::kernels::detail
