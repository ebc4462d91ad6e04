#include <zsched/kernels.hpp>

#if defined(__x86_64__)
#include <immintrin.h>
#define ZSCHED_HAVE_AVX2_KERNELS 1
#else
#define ZSCHED_HAVE_AVX2_KERNELS 0
#endif

namespace zsched::kernels::detail {

#if ZSCHED_HAVE_AVX2_KERNELS

bool avx2_compiled() { return true; }

__attribute__((target("avx2"))) std::optional<std::size_t>
series_sums_avx2(const SeriesBatch& batch, double rel_tol, std::size_t max_terms, std::span<SeriesSum> out)
{
    const std::size_t n = out.size();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d big = _mm256_set1_pd(0x1p600);
    const __m256d small = _mm256_set1_pd(0x1p-600);
    const __m256d tol = _mm256_set1_pd(rel_tol);

    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d r = _mm256_loadu_pd(batch.arrival.data() + k);
        const __m256d a = _mm256_loadu_pd(batch.service.data() + k);
        const __m256d d = _mm256_loadu_pd(batch.deadline.data() + k);
        __m256d term = one;
        __m256d sum = one;
        __m256d scale = _mm256_setzero_pd();
        __m256d terms = _mm256_setzero_pd();
        __m256d active = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));

        for (std::size_t l = 1; l <= max_terms; ++l) {
            const __m256d lv = _mm256_set1_pd(static_cast<double>(l));
            const __m256d denom = _mm256_add_pd(a, _mm256_mul_pd(lv, d));
            const __m256d ratio = _mm256_div_pd(r, denom);
            __m256d nterm = _mm256_mul_pd(term, ratio);
            __m256d nsum = _mm256_add_pd(sum, nterm);
            const __m256d over = _mm256_cmp_pd(nsum, big, _CMP_GT_OQ);
            nsum = _mm256_blendv_pd(nsum, _mm256_mul_pd(nsum, small), over);
            nterm = _mm256_blendv_pd(nterm, _mm256_mul_pd(nterm, small), over);
            const __m256d nscale = _mm256_add_pd(scale, _mm256_and_pd(over, one));

            const __m256d done = _mm256_and_pd(_mm256_cmp_pd(ratio, one, _CMP_LT_OQ),
                                               _mm256_cmp_pd(nterm, _mm256_mul_pd(tol, nsum), _CMP_LT_OQ));
            term = _mm256_blendv_pd(term, nterm, active);
            sum = _mm256_blendv_pd(sum, nsum, active);
            scale = _mm256_blendv_pd(scale, nscale, active);
            terms = _mm256_blendv_pd(terms, lv, _mm256_and_pd(done, active));
            active = _mm256_andnot_pd(done, active);
            if (_mm256_movemask_pd(active) == 0) {
                break;
            }
        }

        const int still = _mm256_movemask_pd(active);
        if (still != 0) {
            return k + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(still)));
        }
        alignas(32) double s[4], c[4], t[4];
        _mm256_store_pd(s, sum);
        _mm256_store_pd(c, scale);
        _mm256_store_pd(t, terms);
        for (int lane = 0; lane < 4; ++lane) {
            out[k + lane] = SeriesSum{s[lane], static_cast<int>(c[lane]), static_cast<std::size_t>(t[lane])};
        }
    }
    for (; k < n; ++k) {
        auto s = series_sum_scalar(batch.arrival[k], batch.service[k], batch.deadline[k], rel_tol, max_terms);
        if (!s) {
            return k;
        }
        out[k] = *s;
    }
    return std::nullopt;
}

#else

bool avx2_compiled() { return false; }

std::optional<std::size_t> series_sums_avx2(const SeriesBatch& batch, double rel_tol, std::size_t max_terms,
                                            std::span<SeriesSum> out)
{
    return series_sums_scalar(batch, rel_tol, max_terms, out);
}

#endif

} // namespace zsched::kernels::detail
