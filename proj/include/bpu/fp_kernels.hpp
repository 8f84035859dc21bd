#pragma once

// Row kernels for dense F_p elimination. A scalar reference implementation is
// always present; an AVX2 (x86-64) or NEON (aarch64) variant is selected at
// runtime when the CPU supports it. Set BPUCHECK_SIMD=scalar to force the
// reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace bpu::fp {

enum class KernelKind { scalar, avx2, neon };

std::string_view kernel_name(KernelKind k);

// Entries are residues in [0, p). SIMD variants handle p < 2^11 and defer to
// the scalar path otherwise.
struct RowKernels {
    KernelKind kind;
    // dst[i] = (dst[i] + c * src[i]) mod p
    void (*axpy)(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n);
    // row[i] = (c * row[i]) mod p
    void (*scale)(std::uint32_t* row, std::uint32_t c, std::uint32_t p, std::size_t n);
};

const RowKernels& scalar_kernels();
// nullptr when the variant is not compiled in or the CPU lacks the extension.
const RowKernels* simd_kernels();

const RowKernels& active_kernels();
// Returns false (and leaves the selection unchanged) if the kind is unavailable.
bool select_kernels(KernelKind kind);

inline void axpy(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c, std::uint32_t p)
{
    active_kernels().axpy(dst.data(), src.data(), c, p, dst.size());
}

inline void scale(std::span<std::uint32_t> row, std::uint32_t c, std::uint32_t p)
{
    active_kernels().scale(row.data(), c, p, row.size());
}

namespace detail {
const RowKernels* avx2_kernels();
const RowKernels* neon_kernels();
}  // namespace detail

}  // namespace bpu::fp
