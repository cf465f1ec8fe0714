// Compiled with -mavx2 (without -mfma); only called after a runtime CPU check.
#include "rhg/simd/circle_scan.hpp"

#include <immintrin.h>

namespace rhg::simd {

void scanCircleAvx2(std::span<const double> xs, std::span<const double> ys,
                    std::span<const std::uint32_t> ids, const CircleQuery& q,
                    std::vector<std::uint32_t>& out) {
    const std::size_t n = ids.size();
    const __m256d cx = _mm256_set1_pd(q.cx);
    const __m256d cy = _mm256_set1_pd(q.cy);
    const __m256d r2 = _mm256_set1_pd(q.radiusSq);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + i), cx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + i), cy);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        unsigned mask = static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(d2, r2, _CMP_LT_OQ)));
        while (mask != 0) {
            const unsigned lane = static_cast<unsigned>(__builtin_ctz(mask));
            out.push_back(ids[i + lane]);
            mask &= mask - 1;
        }
    }
    if (i < n)
        scanCircleScalar(xs.subspan(i), ys.subspan(i), ids.subspan(i), q, out);
}

} // namespace rhg::simd
