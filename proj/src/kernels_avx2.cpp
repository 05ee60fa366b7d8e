// AVX2 variants of the pairwise kernels. This translation unit is compiled
// with -mavx2 only on x86-64 builds; the dispatcher never calls into it
// unless the CPU reports AVX2 at runtime.
#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <span>

namespace loggas::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

const __m256d kAbsMask =
    _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

}  // namespace

void inverse_gap_sums_avx2(std::span<const double> xs, std::span<double> out) {
    const std::size_t n = xs.size();
    const double* x = xs.data();
    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const __m256d xk = _mm256_set1_pd(x[k]);
        __m256d acc = _mm256_setzero_pd();
        double tail = 0.0;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            if (k >= j && k < j + 4) {
                // Block containing the excluded index: do its three terms in
                // scalar instead of masking lanes.
                for (std::size_t jj = j; jj < j + 4; ++jj) {
                    if (jj != k) tail += 1.0 / (x[k] - x[jj]);
                }
                continue;
            }
            const __m256d d = _mm256_sub_pd(xk, _mm256_loadu_pd(x + j));
            acc = _mm256_add_pd(acc, _mm256_div_pd(one, d));
        }
        for (; j < n; ++j) {
            if (j != k) tail += 1.0 / (x[k] - x[j]);
        }
        out[k] = hsum(acc) + tail;
    }
}

double inverse_gap_sum_avx2(std::span<const double> xs, std::size_t k) {
    const std::size_t n = xs.size();
    const double* x = xs.data();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d xk = _mm256_set1_pd(x[k]);
    __m256d acc = _mm256_setzero_pd();
    double tail = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        if (k >= j && k < j + 4) {
            for (std::size_t jj = j; jj < j + 4; ++jj) {
                if (jj != k) tail += 1.0 / (x[k] - x[jj]);
            }
            continue;
        }
        const __m256d d = _mm256_sub_pd(xk, _mm256_loadu_pd(x + j));
        acc = _mm256_add_pd(acc, _mm256_div_pd(one, d));
    }
    for (; j < n; ++j) {
        if (j != k) tail += 1.0 / (x[k] - x[j]);
    }
    return hsum(acc) + tail;
}

void inverse_square_gap_sums_avx2(std::span<const double> xs, std::span<double> out) {
    const std::size_t n = xs.size();
    const double* x = xs.data();
    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const __m256d xk = _mm256_set1_pd(x[k]);
        __m256d acc = _mm256_setzero_pd();
        double tail = 0.0;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            if (k >= j && k < j + 4) {
                for (std::size_t jj = j; jj < j + 4; ++jj) {
                    if (jj != k) {
                        const double d = x[k] - x[jj];
                        tail += 1.0 / (d * d);
                    }
                }
                continue;
            }
            const __m256d d = _mm256_sub_pd(xk, _mm256_loadu_pd(x + j));
            acc = _mm256_add_pd(acc, _mm256_div_pd(one, _mm256_mul_pd(d, d)));
        }
        for (; j < n; ++j) {
            if (j != k) {
                const double d = x[k] - x[j];
                tail += 1.0 / (d * d);
            }
        }
        out[k] = hsum(acc) + tail;
    }
}

// Batches logarithms through per-lane running products, flushing a lane set
// to log() whenever any magnitude leaves [2^-500, 2^500]. That band keeps
// every intermediate normal for gap magnitudes anywhere in (2^-524, 2^524),
// so precision loss is bounded by ordinary rounding. A zero gap drives the
// product to exact 0 and flushes to -inf, matching the scalar kernel.
double log_abs_distance_sum_avx2(std::span<const double> xs, double y, std::size_t skip) {
    const std::size_t n = xs.size();
    const double* x = xs.data();
    const __m256d vy = _mm256_set1_pd(y);
    const __m256d band_hi = _mm256_set1_pd(0x1p+500);
    const __m256d band_lo = _mm256_set1_pd(0x1p-500);
    __m256d prod = _mm256_set1_pd(1.0);
    double sum = 0.0;
    auto flush = [&]() {
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, prod);
        sum += std::log(lanes[0]) + std::log(lanes[1]) + std::log(lanes[2]) +
               std::log(lanes[3]);
        prod = _mm256_set1_pd(1.0);
    };
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        if (skip >= j && skip < j + 4) {
            for (std::size_t jj = j; jj < j + 4; ++jj) {
                if (jj != skip) sum += std::log(std::abs(y - x[jj]));
            }
            continue;
        }
        const __m256d d =
            _mm256_and_pd(kAbsMask, _mm256_sub_pd(vy, _mm256_loadu_pd(x + j)));
        prod = _mm256_mul_pd(prod, d);
        const __m256d mag = _mm256_and_pd(kAbsMask, prod);
        const __m256d outside =
            _mm256_or_pd(_mm256_cmp_pd(mag, band_hi, _CMP_GT_OQ),
                         _mm256_cmp_pd(mag, band_lo, _CMP_LT_OQ));
        if (_mm256_movemask_pd(outside) != 0) flush();
    }
    flush();
    for (; j < n; ++j) {
        if (j != skip) sum += std::log(std::abs(y - x[j]));
    }
    return sum;
}

double log_abs_gap_sum_avx2(std::span<const double> xs) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        s += log_abs_distance_sum_avx2(xs.subspan(i + 1), xs[i], xs.size());
    }
    return s;
}

}  // namespace loggas::kernels::detail

#endif  // __AVX2__
