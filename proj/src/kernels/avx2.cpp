// Compiled with -mavx2 -mfma; nothing here may run before the dispatcher has
// confirmed CPU support.

#include <immintrin.h>

#include "clab/kernels.hpp"

namespace clab::simd {
namespace {

// r = a*b mod n for four lanes, exact while a*b < 2^52.
inline __m256d mulmod_pd(__m256d a, __m256d b, __m256d n, __m256d inv_n) {
    const __m256d prod = _mm256_mul_pd(a, b);
    const __m256d quo = _mm256_floor_pd(_mm256_mul_pd(prod, inv_n));
    __m256d r = _mm256_fnmadd_pd(quo, n, prod);
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ), n));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, n, _CMP_GE_OQ), n));
    return r;
}

void accumulate_gather_avx2(std::span<std::uint64_t> out, std::span<const std::uint32_t> table,
                            std::uint64_t step, std::uint64_t weight) {
    const std::uint64_t n = out.size();
    if (n < 16 || n >= (std::uint64_t{1} << 30) || weight >= (std::uint64_t{1} << 32)) {
        detail::accumulate_gather_scalar(out, table, step, weight);
        return;
    }
    step %= n;
    alignas(32) std::int32_t start[8];
    std::uint64_t idx = 0;
    for (int j = 0; j < 8; ++j) {
        start[j] = static_cast<std::int32_t>(idx);
        idx = (idx + step) % n;
    }
    const auto inc = static_cast<std::int32_t>(8 * step % n);
    const __m256i vn = _mm256_set1_epi32(static_cast<std::int32_t>(n));
    const __m256i vn_minus_1 = _mm256_set1_epi32(static_cast<std::int32_t>(n - 1));
    const __m256i vinc = _mm256_set1_epi32(inc);
    const __m256i vweight = _mm256_set1_epi64x(static_cast<long long>(weight));
    __m256i vidx = _mm256_load_si256(reinterpret_cast<const __m256i*>(start));
    const auto* base = reinterpret_cast<const int*>(table.data());

    std::uint64_t a = 0;
    for (; a + 8 <= n; a += 8) {
        const __m256i vals = _mm256_i32gather_epi32(base, vidx, 4);
        const __m256i lo = _mm256_cvtepu32_epi64(_mm256_castsi256_si128(vals));
        const __m256i hi = _mm256_cvtepu32_epi64(_mm256_extracti128_si256(vals, 1));
        auto* dst = reinterpret_cast<__m256i*>(out.data() + a);
        _mm256_storeu_si256(dst, _mm256_add_epi64(_mm256_loadu_si256(dst), _mm256_mul_epu32(lo, vweight)));
        _mm256_storeu_si256(dst + 1,
                            _mm256_add_epi64(_mm256_loadu_si256(dst + 1), _mm256_mul_epu32(hi, vweight)));
        vidx = _mm256_add_epi32(vidx, vinc);
        vidx = _mm256_sub_epi32(vidx, _mm256_and_si256(_mm256_cmpgt_epi32(vidx, vn_minus_1), vn));
    }
    std::uint64_t tail = a * step % n;
    for (; a < n; ++a) {
        out[a] += weight * table[tail];
        tail += step;
        if (tail >= n) tail -= n;
    }
}

void form_targets_avx2(std::span<std::uint32_t> out, std::span<const std::uint32_t> row, std::uint32_t shift,
                       std::uint32_t mult, std::uint32_t n) {
    if (n >= kVectorModulusLimit) {
        detail::form_targets_scalar(out, row, shift, mult, n);
        return;
    }
    const __m128i vshift = _mm_set1_epi32(static_cast<int>(shift));
    const __m128i vn_i = _mm_set1_epi32(static_cast<int>(n));
    const __m128i vn_minus_1 = _mm_set1_epi32(static_cast<int>(n) - 1);
    const __m256d vn = _mm256_set1_pd(static_cast<double>(n));
    const __m256d inv_n = _mm256_set1_pd(1.0 / static_cast<double>(n));
    const __m256d vmult = _mm256_set1_pd(static_cast<double>(mult));

    std::size_t i = 0;
    const std::size_t len = row.size();
    for (; i + 4 <= len; i += 4) {
        __m128i s = _mm_add_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(row.data() + i)), vshift);
        s = _mm_sub_epi32(s, _mm_and_si128(_mm_cmpgt_epi32(s, vn_minus_1), vn_i));
        const __m256d r = mulmod_pd(_mm256_cvtepi32_pd(s), vmult, vn, inv_n);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_cvttpd_epi32(r));
    }
    if (i < len) detail::form_targets_scalar(out.subspan(i), row.subspan(i), shift, mult, n);
}

std::complex<double> root_sum_avx2(std::span<const std::uint32_t> exps, std::span<const double> weights,
                                   std::uint64_t mult, const RootTable& roots) {
    const std::uint64_t order = roots.order;
    if (order >= kVectorModulusLimit) return detail::root_sum_scalar(exps, weights, mult, roots);
    mult %= order;
    const __m256d vorder = _mm256_set1_pd(static_cast<double>(order));
    const __m256d inv_order = _mm256_set1_pd(1.0 / static_cast<double>(order));
    const __m256d vmult = _mm256_set1_pd(static_cast<double>(mult));
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    std::size_t i = 0;
    const std::size_t len = exps.size();
    for (; i + 4 <= len; i += 4) {
        const __m128i e = _mm_loadu_si128(reinterpret_cast<const __m128i*>(exps.data() + i));
        const __m256d t = mulmod_pd(_mm256_cvtepi32_pd(e), vmult, vorder, inv_order);
        const __m128i idx = _mm256_cvttpd_epi32(t);
        const __m256d w = _mm256_loadu_pd(weights.data() + i);
        acc_re = _mm256_fmadd_pd(w, _mm256_i32gather_pd(roots.re.data(), idx, 8), acc_re);
        acc_im = _mm256_fmadd_pd(w, _mm256_i32gather_pd(roots.im.data(), idx, 8), acc_im);
    }
    alignas(32) double re[4];
    alignas(32) double im[4];
    _mm256_store_pd(re, acc_re);
    _mm256_store_pd(im, acc_im);
    std::complex<double> total{(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
    if (i < len) total += detail::root_sum_scalar(exps.subspan(i), weights.subspan(i), mult, roots);
    return total;
}

constexpr KernelSet kAvx2{Isa::Avx2, &accumulate_gather_avx2, &form_targets_avx2, &root_sum_avx2};

}  // namespace

const KernelSet* detail::avx2_table() noexcept { return &kAvx2; }

}  // namespace clab::simd
