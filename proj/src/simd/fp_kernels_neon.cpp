// NEON row kernels (aarch64, where NEON is architecturally guaranteed).

#include "bpu/fp_kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace bpu::fp {

namespace {

constexpr std::uint32_t kMaxSimdPrime = 1u << 11;

// Same float-quotient scheme as the AVX2 path; operands are below 2^23.
inline uint32x4_t reduce(uint32x4_t v, float32x4_t inv_p, uint32x4_t vp)
{
    float32x4_t vf = vcvtq_f32_u32(v);
    uint32x4_t q = vcvtq_u32_f32(vmulq_f32(vf, inv_p));
    int32x4_t r = vreinterpretq_s32_u32(vmlsq_u32(v, q, vp));
    int32x4_t sp = vreinterpretq_s32_u32(vp);
    uint32x4_t neg = vcltq_s32(r, vdupq_n_s32(0));
    r = vaddq_s32(r, vandq_s32(vreinterpretq_s32_u32(neg), sp));
    uint32x4_t big = vcgeq_s32(r, sp);
    r = vsubq_s32(r, vandq_s32(vreinterpretq_s32_u32(big), sp));
    return vreinterpretq_u32_s32(r);
}

void axpy_neon(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n)
{
    if (p >= kMaxSimdPrime) {
        scalar_kernels().axpy(dst, src, c, p, n);
        return;
    }
    const uint32x4_t vp = vdupq_n_u32(p);
    const float32x4_t inv_p = vdupq_n_f32(1.0f / static_cast<float>(p));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        uint32x4_t v = vmlaq_n_u32(vld1q_u32(dst + i), vld1q_u32(src + i), c);
        vst1q_u32(dst + i, reduce(v, inv_p, vp));
    }
    if (i < n)
        scalar_kernels().axpy(dst + i, src + i, c, p, n - i);
}

void scale_neon(std::uint32_t* row, std::uint32_t c, std::uint32_t p, std::size_t n)
{
    if (p >= kMaxSimdPrime) {
        scalar_kernels().scale(row, c, p, n);
        return;
    }
    const uint32x4_t vp = vdupq_n_u32(p);
    const float32x4_t inv_p = vdupq_n_f32(1.0f / static_cast<float>(p));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vst1q_u32(row + i, reduce(vmulq_n_u32(vld1q_u32(row + i), c), inv_p, vp));
    if (i < n)
        scalar_kernels().scale(row + i, c, p, n - i);
}

const RowKernels kNeon{KernelKind::neon, axpy_neon, scale_neon};

}  // namespace

const RowKernels* detail::neon_kernels()
{
    return &kNeon;
}

}  // namespace bpu::fp

#else

namespace bpu::fp {
const RowKernels* detail::neon_kernels()
{
    return nullptr;
}
}  // namespace bpu::fp

#endif
