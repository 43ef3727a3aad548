// AVX2 kernels. Compiled with -mavx2 -ffp-contract=off (and without -mfma),
// so every lane performs exactly the IEEE operations of the scalar reference:
// vsubpd/vmulpd/vaddpd/vsqrtpd/vmaxpd are all correctly rounded per lane.
// The 4-lane accumulators and the ((l0+l1)+(l2+l3)) horizontal combine mirror
// the reference's blocking, which is what makes results bit-identical rather
// than merely close.
#include "varmult/kernels.hpp"

#if defined(VARMULT_BUILD_AVX2)

#include <immintrin.h>

#include <limits>

namespace varmult::kernels {

namespace {

inline __m256d vec_variation_pow(__m256d d2, PowKind pk) {
    switch (pk) {
        case PowKind::one: return _mm256_sqrt_pd(d2);
        case PowKind::two: return d2;
        case PowKind::three: return _mm256_mul_pd(d2, _mm256_sqrt_pd(d2));
        case PowKind::four: return _mm256_mul_pd(d2, d2);
    }
    return d2;
}

inline double hsum_blocked(__m256d v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_pow_avx2(const double* re, const double* im, std::size_t n, PowKind pk) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(re + i);
        __m256d y = _mm256_loadu_pd(im + i);
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
        acc = _mm256_add_pd(acc, vec_variation_pow(d2, pk));
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        double x = re[i];
        double y = im[i];
        double d2 = x * x + y * y;
        tail += variation_pow(d2, pk);
    }
    return hsum_blocked(acc) + tail;
}

double max_norm_sq_avx2(const double* re, const double* im, std::size_t n) {
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(re + i);
        __m256d y = _mm256_loadu_pd(im + i);
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
        vmax = _mm256_max_pd(vmax, d2);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vmax);
    double m = ((lane[0] > lane[1]) ? lane[0] : lane[1]);
    double m2 = ((lane[2] > lane[3]) ? lane[2] : lane[3]);
    if (m2 > m) m = m2;
    for (; i < n; ++i) {
        double x = re[i];
        double y = im[i];
        double d2 = x * x + y * y;
        if (d2 > m) m = d2;
    }
    return m;
}

double weighted_sum_pow_avx2(const double* re, const double* im, const double* w,
                             std::size_t n, PowKind pk) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(re + i);
        __m256d y = _mm256_loadu_pd(im + i);
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
        __m256d wi = _mm256_loadu_pd(w + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(wi, vec_variation_pow(d2, pk)));
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        double x = re[i];
        double y = im[i];
        double d2 = x * x + y * y;
        tail += w[i] * variation_pow(d2, pk);
    }
    return hsum_blocked(acc) + tail;
}

double dp_row_avx2(const double* re, const double* im, const double* best,
                   std::size_t j, PowKind pk) {
    double m = -std::numeric_limits<double>::infinity();
    __m256d vmax = _mm256_set1_pd(m);
    __m256d xj = _mm256_set1_pd(re[j]);
    __m256d yj = _mm256_set1_pd(im[j]);
    std::size_t i = 0;
    for (; i + 4 <= j; i += 4) {
        __m256d dx = _mm256_sub_pd(xj, _mm256_loadu_pd(re + i));
        __m256d dy = _mm256_sub_pd(yj, _mm256_loadu_pd(im + i));
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        __m256d cand = _mm256_add_pd(_mm256_loadu_pd(best + i), vec_variation_pow(d2, pk));
        vmax = _mm256_max_pd(vmax, cand);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vmax);
    for (int l = 0; l < 4; ++l) {
        if (lane[l] > m) m = lane[l];
    }
    for (; i < j; ++i) {
        double dx = re[j] - re[i];
        double dy = im[j] - im[i];
        double d2 = dx * dx + dy * dy;
        double cand = best[i] + variation_pow(d2, pk);
        if (cand > m) m = cand;
    }
    return m;
}

} // namespace

const Impl& avx2_impl() {
    static const Impl impl{
        "avx2",
        &sum_pow_avx2,
        &max_norm_sq_avx2,
        &weighted_sum_pow_avx2,
        &dp_row_avx2,
    };
    return impl;
}

} // namespace varmult::kernels

#endif // VARMULT_BUILD_AVX2
