#include "bpu/fp_kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace bpu::fp {

namespace {

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n)
{
    const std::uint64_t cc = c;
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = static_cast<std::uint32_t>((dst[i] + cc * src[i]) % p);
}

void scale_scalar(std::uint32_t* row, std::uint32_t c, std::uint32_t p, std::size_t n)
{
    const std::uint64_t cc = c;
    for (std::size_t i = 0; i < n; ++i)
        row[i] = static_cast<std::uint32_t>((cc * row[i]) % p);
}

const RowKernels kScalar{KernelKind::scalar, axpy_scalar, scale_scalar};

const RowKernels* initial_selection()
{
    const char* env = std::getenv("BPUCHECK_SIMD");
    if (env && std::string(env) == "scalar")
        return &kScalar;
    if (const RowKernels* k = simd_kernels())
        return k;
    return &kScalar;
}

std::atomic<const RowKernels*>& selection()
{
    static std::atomic<const RowKernels*> s{initial_selection()};
    return s;
}

}  // namespace

std::string_view kernel_name(KernelKind k)
{
    switch (k) {
    case KernelKind::scalar:
        return "scalar";
    case KernelKind::avx2:
        return "avx2";
    case KernelKind::neon:
        return "neon";
    }
    return "unknown";
}

const RowKernels& scalar_kernels()
{
    return kScalar;
}

const RowKernels* simd_kernels()
{
    if (const RowKernels* k = detail::avx2_kernels())
        return k;
    return detail::neon_kernels();
}

const RowKernels& active_kernels()
{
    return *selection().load(std::memory_order_acquire);
}

bool select_kernels(KernelKind kind)
{
    const RowKernels* k = nullptr;
    if (kind == KernelKind::scalar)
        k = &kScalar;
    else if (kind == KernelKind::avx2)
        k = detail::avx2_kernels();
    else
        k = detail::neon_kernels();
    if (!k)
        return false;
    selection().store(k, std::memory_order_release);
    return true;
}

}  // namespace bpu::fp
