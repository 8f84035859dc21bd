// AVX2 row kernels. Compiled with -mavx2 on x86-64 only; selected at runtime.

#include "bpu/fp_kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

namespace bpu::fp {

namespace {

constexpr std::uint32_t kMaxSimdPrime = 1u << 11;

// v < 2^23 is exact in float; the float quotient is off by at most one, fixed below.
inline __m256i reduce(__m256i v, __m256 inv_p, __m256i vp)
{
    __m256 vf = _mm256_cvtepi32_ps(v);
    __m256i q = _mm256_cvttps_epi32(_mm256_mul_ps(vf, inv_p));
    __m256i r = _mm256_sub_epi32(v, _mm256_mullo_epi32(q, vp));
    __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
    r = _mm256_add_epi32(r, _mm256_and_si256(neg, vp));
    __m256i big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vp, _mm256_set1_epi32(1)));
    return _mm256_sub_epi32(r, _mm256_and_si256(big, vp));
}

void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n)
{
    if (p >= kMaxSimdPrime) {
        scalar_kernels().axpy(dst, src, c, p, n);
        return;
    }
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256 inv_p = _mm256_set1_ps(1.0f / static_cast<float>(p));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i v = _mm256_add_epi32(d, _mm256_mullo_epi32(s, vc));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce(v, inv_p, vp));
    }
    if (i < n)
        scalar_kernels().axpy(dst + i, src + i, c, p, n - i);
}

void scale_avx2(std::uint32_t* row, std::uint32_t c, std::uint32_t p, std::size_t n)
{
    if (p >= kMaxSimdPrime) {
        scalar_kernels().scale(row, c, p, n);
        return;
    }
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256 inv_p = _mm256_set1_ps(1.0f / static_cast<float>(p));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(row + i), reduce(_mm256_mullo_epi32(r, vc), inv_p, vp));
    }
    if (i < n)
        scalar_kernels().scale(row + i, c, p, n - i);
}

const RowKernels kAvx2{KernelKind::avx2, axpy_avx2, scale_avx2};

}  // namespace

const RowKernels* detail::avx2_kernels()
{
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
}

}  // namespace bpu::fp

#else

namespace bpu::fp {
const RowKernels* detail::avx2_kernels()
{
    return nullptr;
}
}  // namespace bpu::fp

#endif
