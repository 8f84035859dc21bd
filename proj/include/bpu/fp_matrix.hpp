#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bpu {

// Modular helpers for a prime p < 2^31.
std::uint32_t fp_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);
std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p);
// Reduce a signed value into [0, p).
std::uint32_t fp_reduce(long long a, std::uint32_t p);

// Dense matrix over F_p, row-major. Elimination runs through bpu::fp row kernels.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

    static FpMatrix identity(std::size_t n, std::uint32_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t prime() const { return p_; }

    std::uint32_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<std::uint32_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const std::uint32_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> row_reduce();
    std::size_t rank() const;
    bool is_zero() const;
    // nullopt if singular.
    std::optional<FpMatrix> inverse() const;

    FpMatrix transpose() const;

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
    friend bool operator==(const FpMatrix& a, const FpMatrix& b) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::uint32_t p_ = 2;
    std::vector<std::uint32_t> data_;
};

}  // namespace bpu
