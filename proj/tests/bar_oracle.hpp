#pragma once

// Integral homology of a finite group from the normalized bar complex, used
// as an oracle for the resolution-based code paths.

#include <functional>
#include <vector>

#include "bpu/finite_group.hpp"
#include "bpu/zmodule.hpp"

namespace bpu::test {

inline MultiplicationTable cyclic_table(std::uint32_t n)
{
    std::vector<std::uint32_t> t(n * n);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            t[a * n + b] = (a + b) % n;
    return MultiplicationTable(t, 0);
}

inline MultiplicationTable product_table(const MultiplicationTable& g, const MultiplicationTable& h)
{
    const auto m = static_cast<std::uint32_t>(g.order()), n = static_cast<std::uint32_t>(h.order());
    std::vector<std::uint32_t> t(m * n * m * n);
    for (std::uint32_t a = 0; a < m * n; ++a)
        for (std::uint32_t b = 0; b < m * n; ++b)
            t[a * m * n + b] = g.mul(a / n, b / n) * n + h.mul(a % n, b % n);
    return MultiplicationTable(t, g.identity() * n + h.identity());
}

class BarComplex {
public:
    explicit BarComplex(const MultiplicationTable& g) : g_(g)
    {
        for (std::uint32_t x = 0; x < g.order(); ++x)
            if (x != g.identity())
                nonidentity_.push_back(x);
    }

    // Rows are the boundaries of the k-cells [g_1|...|g_k], in (k-1)-cell coordinates.
    IntMatrix boundary(int k) const
    {
        const std::size_t m = nonidentity_.size();
        const std::size_t rows = power(m, k), cols = power(m, k - 1);
        IntMatrix d(rows, cols);
        std::vector<std::uint32_t> cell(static_cast<std::size_t>(k));
        for (std::size_t r = 0; r < rows; ++r) {
            std::size_t code = r;
            for (int i = k - 1; i >= 0; --i) {
                cell[static_cast<std::size_t>(i)] = nonidentity_[code % m];
                code /= m;
            }
            auto add = [&](const std::vector<std::uint32_t>& face, long sign) {
                std::size_t c = 0;
                for (auto x : face) {
                    if (x == g_.identity())
                        return;
                    c = c * m + index(x);
                }
                d(r, c) += sign;
            };
            add(std::vector<std::uint32_t>(cell.begin() + 1, cell.end()), 1);
            for (int i = 0; i + 1 < k; ++i) {
                std::vector<std::uint32_t> face;
                for (int j = 0; j < k; ++j) {
                    if (j == i + 1)
                        continue;
                    face.push_back(j == i ? g_.mul(cell[static_cast<std::size_t>(i)], cell[static_cast<std::size_t>(i) + 1])
                                          : cell[static_cast<std::size_t>(j)]);
                }
                add(face, (i + 1) % 2 ? -1 : 1);
            }
            add(std::vector<std::uint32_t>(cell.begin(), cell.end() - 1), k % 2 ? -1 : 1);
        }
        return d;
    }

    // H_k for k >= 1.
    FgAbGroup homology(int k) const
    {
        const IntMatrix cycles = k == 1 ? IntMatrix::identity(nonidentity_.size()) : kernel_basis(boundary(k).transpose());
        return subquotient(cycles, boundary(k + 1));
    }

    // H^d(G; Z) for d <= top, from homology by universal coefficients.
    FgAbGroup cohomology(int d) const
    {
        if (d == 0)
            return FgAbGroup::free(1);
        if (d == 1)
            return FgAbGroup::zero();
        return FgAbGroup::from_cyclic_orders(0, homology(d - 1).torsion());
    }

private:
    static std::size_t power(std::size_t m, int k)
    {
        std::size_t out = 1;
        for (int i = 0; i < k; ++i)
            out *= m;
        return out;
    }

    std::size_t index(std::uint32_t x) const
    {
        return x < g_.identity() ? x : x - 1;
    }

    const MultiplicationTable& g_;
    std::vector<std::uint32_t> nonidentity_;
};

}  // namespace bpu::test
