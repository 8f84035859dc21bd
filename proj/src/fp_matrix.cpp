#include "bpu/fp_matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "bpu/fp_kernels.hpp"

namespace bpu {

std::uint32_t fp_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p)
{
    std::uint64_t base = a % p;
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1)
            r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p)
{
    if (a % p == 0)
        throw std::domain_error("fp_inv: zero has no inverse");
    return fp_pow(a, p - 2, p);
}

std::uint32_t fp_reduce(long long a, std::uint32_t p)
{
    long long r = a % static_cast<long long>(p);
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0)
{
}

FpMatrix FpMatrix::identity(std::size_t n, std::uint32_t p)
{
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

std::vector<std::size_t> FpMatrix::row_reduce()
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t s = r;
        while (s < rows_ && (*this)(s, c) == 0)
            ++s;
        if (s == rows_)
            continue;
        if (s != r)
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap((*this)(r, j), (*this)(s, j));
        fp::scale(row(r), fp_inv((*this)(r, c), p_), p_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r)
                continue;
            std::uint32_t x = (*this)(i, c);
            if (x != 0)
                fp::axpy(row(i), row(r), p_ - x, p_);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t FpMatrix::rank() const
{
    FpMatrix m = *this;
    return m.row_reduce().size();
}

bool FpMatrix::is_zero() const
{
    for (auto x : data_)
        if (x != 0)
            return false;
    return true;
}

std::optional<FpMatrix> FpMatrix::inverse() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("FpMatrix::inverse: not square");
    std::size_t n = rows_;
    FpMatrix aug(n, 2 * n, p_);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = (*this)(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = aug.row_reduce();
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
        return std::nullopt;
    FpMatrix inv(n, n, p_);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

FpMatrix FpMatrix::transpose() const
{
    FpMatrix t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b)
{
    if (a.cols_ != b.rows_ || a.p_ != b.p_)
        throw std::invalid_argument("FpMatrix product: shape or prime mismatch");
    FpMatrix c(a.rows_, b.cols_, a.p_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k)
            if (std::uint32_t x = a(i, k))
                fp::axpy(c.row(i), b.row(k), x, a.p_);
    return c;
}

std::string FpMatrix::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << (*this)(i, j);
        os << '\n';
    }
    return os.str();
}

}  // namespace bpu
