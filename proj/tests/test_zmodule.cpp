#include <numeric>

#include <json.hpp>

#include "bpu/zmodule.hpp"
#include "support.hpp"

using namespace bpu;

namespace {

using Small = std::vector<std::vector<long long>>;

long long det_small(const Small& m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    if (n == 1)
        return m[0][0];
    long long total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        Small minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<long long> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c)
                    row.push_back(m[i][j]);
            minor.push_back(row);
        }
        total += (c % 2 ? -1 : 1) * m[0][c] * det_small(minor);
    }
    return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors.
std::vector<long long> invariant_factors_oracle(const Small& a)
{
    const std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
    std::vector<long long> divisors{1};
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(r, k, 0, cur, rs);
        subsets(c, k, 0, cur, cs);
        long long g = 0;
        for (const auto& ri : rs)
            for (const auto& ci : cs) {
                Small m;
                for (auto i : ri) {
                    std::vector<long long> row;
                    for (auto j : ci)
                        row.push_back(a[i][j]);
                    m.push_back(row);
                }
                g = std::gcd(g, std::llabs(det_small(m)));
            }
        if (g == 0)
            break;
        divisors.push_back(g);
    }
    std::vector<long long> out;
    for (std::size_t k = 1; k < divisors.size(); ++k)
        out.push_back(divisors[k] / divisors[k - 1]);
    return out;
}

IntMatrix to_matrix(const Small& a)
{
    IntMatrix m(a.size(), a.empty() ? 0 : a[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            m(i, j) = static_cast<long>(a[i][j]);
    return m;
}

Small random_small(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound)
{
    std::uniform_int_distribution<int> e(-bound, bound);
    Small a(r, std::vector<long long>(c));
    for (auto& row : a)
        for (auto& x : row)
            x = e(rng);
    return a;
}

FgAbGroup z(long m)
{
    return FgAbGroup::cyclic(Integer(m));
}

// Size of {b in B : a b = 0} by enumerating B = sum Z_{b_i}.
long long killed_by(long long a, const std::vector<long long>& orders)
{
    long long count = 1;
    for (long long b : orders) {
        long long c = 0;
        for (long long x = 0; x < b; ++x)
            c += (a * x) % b == 0;
        count *= c;
    }
    return count;
}

}  // namespace

TEST(SmithNormalForm, ExampleTwoByTwo)
{
    const auto snf = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
    EXPECT_EQ(snf.diagonal(), (std::vector<Integer>{2, 4}));
    EXPECT_EQ(invariant_factors_oracle({{2, 4}, {6, 8}}), (std::vector<long long>{2, 4}));
}

TEST(SmithNormalForm, IdentityAndZero)
{
    EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).d, IntMatrix::identity(3));
    const auto zero = smith_normal_form(IntMatrix(1, 1));
    EXPECT_EQ(zero.d, IntMatrix(1, 1));
    EXPECT_EQ(zero.rank(), 0u);
}

TEST(SmithNormalForm, LargeEntriesStayExact)
{
    IntMatrix a = IntMatrix::from_rows({{1, 0}, {0, 1}});
    a(0, 0) = Integer("123456789012345678901234567890");
    a(1, 1) = Integer("987654321098765432109876543210");
    const auto snf = smith_normal_form(a);
    EXPECT_EQ(snf.u * a * snf.v, snf.d);
    EXPECT_EQ(snf.diagonal()[0], Integer("9000000000900000000090"));
}

TEST(SmithNormalForm, EntriesStayBoundedOnRedundantRows)
{
    const Small a{{-7, -2, 7, -4, 9},  {-2, 2, -8, 5, 5},  {7, -6, 8, -5, 9},
                  {-8, -9, 8, 9, 1},   {4, -7, 2, -7, -3}, {23, -126, 174, -132, 90}};
    const IntMatrix m = to_matrix(a);
    const auto snf = smith_normal_form(m);
    EXPECT_EQ(snf.u * m * snf.v, snf.d);
    const auto want = invariant_factors_oracle(a);
    const auto diag = snf.diagonal();
    ASSERT_EQ(diag.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        EXPECT_EQ(diag[i], Integer(static_cast<long>(want[i])));
    EXPECT_EQ(cokernel_group(m), z(194858));
}

TEST(SmithNormalForm, PropertyMatchesDeterminantalOracle)
{
    test::for_each_seed([](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> size(1, 4);
        for (int trial = 0; trial < 150; ++trial) {
            const Small a = random_small(rng, size(rng), size(rng), 12);
            const IntMatrix m = to_matrix(a);
            const auto snf = smith_normal_form(m);
            ASSERT_EQ(snf.u * m * snf.v, snf.d) << m.to_string();
            ASSERT_TRUE(snf.d.is_diagonal());
            ASSERT_EQ(abs(snf.u.determinant()), 1);
            ASSERT_EQ(abs(snf.v.determinant()), 1);
            ASSERT_EQ(snf.v * snf.v_inverse, IntMatrix::identity(m.cols()));
            std::vector<long long> got;
            for (const auto& d : snf.diagonal())
                if (d != 0)
                    got.push_back(d.get_si());
            ASSERT_EQ(got, invariant_factors_oracle(a)) << m.to_string();
        }
    });
}

TEST(Cokernel, Examples)
{
    EXPECT_EQ(cokernel_group(IntMatrix::from_rows({{1, 0}, {0, 5}})), z(5));
    EXPECT_EQ(cokernel_group(IntMatrix::from_rows({{2, 4}, {6, 8}})), z(2) + z(4));
    EXPECT_EQ(cokernel_group(IntMatrix(2, 2)), FgAbGroup::free(2));
    EXPECT_EQ(cokernel_group(IntMatrix(0, 3)), FgAbGroup::free(3));
}

TEST(Cokernel, PropertyRedundantRelationsAndUnimodularChanges)
{
    test::for_each_seed([](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> size(1, 4), coef(-5, 5);
        for (int trial = 0; trial < 100; ++trial) {
            const IntMatrix a = to_matrix(random_small(rng, size(rng), size(rng), 9));
            const FgAbGroup g = cokernel_group(a);
            IntMatrix extra(1, a.cols());
            for (std::size_t i = 0; i < a.rows(); ++i) {
                const int c = coef(rng);
                for (std::size_t j = 0; j < a.cols(); ++j)
                    extra(0, j) += c * a(i, j);
            }
            ASSERT_EQ(cokernel_group(a.stacked(extra)), g);
            IntMatrix b = a;
            if (b.rows() > 1)
                b.add_row_multiple(0, 1, Integer(coef(rng)));
            if (b.cols() > 1)
                b.add_col_multiple(1, 0, Integer(coef(rng)));
            b.negate_row(0);
            ASSERT_EQ(cokernel_group(b), g);
        }
    });
}

TEST(FgAbGroup, CanonicalForm)
{
    EXPECT_EQ(FgAbGroup::from_cyclic_orders(0, {6, 4}), z(2) + z(12));
    EXPECT_EQ(FgAbGroup::from_cyclic_orders(1, {1, 0, 3}), FgAbGroup::free(2) + z(3));
    EXPECT_EQ(z(1), FgAbGroup::zero());
    EXPECT_EQ(z(0), FgAbGroup::free(1));
    EXPECT_EQ((z(2) + z(12)).order(), 24);
    EXPECT_THROW(FgAbGroup::free(1).order(), std::domain_error);
    EXPECT_EQ((FgAbGroup::free(2) + z(2) + z(4)).to_string(), "Z^2 + Z_2 + Z_4");
    EXPECT_EQ(FgAbGroup::zero().to_string(), "0");
}

TEST(FgAbGroup, JsonRoundTrip)
{
    const FgAbGroup g = FgAbGroup::free(1) + z(3) + z(9);
    EXPECT_EQ(FgAbGroup::from_json(g.to_json()), g);
    EXPECT_EQ(g.to_json()["free_rank"], 1);
}

TEST(Pairing, Examples)
{
    EXPECT_EQ(pairing_functor(Pairing::tor, z(4), z(6)), z(2));
    EXPECT_EQ(pairing_functor(Pairing::hom, z(7), FgAbGroup::free(1)), FgAbGroup::zero());
    EXPECT_EQ(pairing_functor(Pairing::ext, z(7), FgAbGroup::free(1)), z(7));
    EXPECT_EQ(pairing_functor(Pairing::tensor, FgAbGroup::free(1) + z(2), z(2)), z(2) + z(2));
    EXPECT_EQ(pairing_functor(Pairing::hom, FgAbGroup::free(2), z(5)), z(5) + z(5));
    EXPECT_EQ(pairing_functor(Pairing::ext, FgAbGroup::free(3), z(5)), FgAbGroup::zero());
}

TEST(Pairing, PropertyTorMatchesKernelCountAndSymmetry)
{
    test::for_each_seed([](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> order(0, 15), count(0, 3);
        auto random_group = [&](std::vector<long long>& finite) {
            std::vector<Integer> orders;
            const int k = count(rng);
            for (int i = 0; i < k; ++i) {
                const int o = order(rng);
                orders.emplace_back(o);
                if (o > 1)
                    finite.push_back(o);
            }
            return FgAbGroup::from_cyclic_orders(0, orders);
        };
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<long long> fa, fb;
            const FgAbGroup a = random_group(fa), b = random_group(fb);
            ASSERT_EQ(pairing_functor(Pairing::tensor, a, b), pairing_functor(Pairing::tensor, b, a));
            ASSERT_EQ(pairing_functor(Pairing::tor, a, b), pairing_functor(Pairing::tor, b, a));
            // Tor(Z_m, B) is the m-torsion of B.
            for (long long m : fa) {
                if (!b.is_finite())
                    continue;
                const FgAbGroup t = pairing_functor(Pairing::tor, z(static_cast<long>(m)), b);
                ASSERT_EQ(t.order(), Integer(static_cast<long>(killed_by(m, fb))));
            }
        }
    });
}

TEST(Kunneth, CyclicSquares)
{
    for (long n = 2; n <= 12; ++n) {
        const GradedAbGroup h = cyclic_group_cohomology(Integer(n), 5);
        EXPECT_EQ(kunneth_graded(h, h, 0), FgAbGroup::free(1));
        EXPECT_EQ(kunneth_graded(h, h, 1), FgAbGroup::zero());
        EXPECT_EQ(kunneth_graded(h, h, 2), z(n) + z(n));
        EXPECT_EQ(kunneth_graded(h, h, 3), z(n));
        EXPECT_EQ(kunneth_graded(h, h, 4), z(n) + z(n) + z(n));
    }
}

TEST(Kunneth, CoprimeFactorsCollapse)
{
    const GradedAbGroup g = cyclic_group_cohomology(Integer(2), 4);
    const GradedAbGroup h = cyclic_group_cohomology(Integer(3), 4);
    EXPECT_EQ(kunneth_graded(g, h, 2), z(6));
    EXPECT_EQ(kunneth_graded(g, h, 3), FgAbGroup::zero());
}

TEST(GradedAbGroup, NegativeDimensionsAreZero)
{
    const GradedAbGroup h = cyclic_group_cohomology(Integer(4), 3);
    EXPECT_TRUE(h.at(-1).is_zero());
    EXPECT_THROW(h.at(4), std::out_of_range);
    EXPECT_EQ(h.at(2), z(4));
}

TEST(Lattice, MembershipAndCoordinates)
{
    const Lattice l(IntMatrix::from_rows({{2, 0}, {1, 3}, {3, 3}}));
    EXPECT_EQ(l.rank(), 2u);
    EXPECT_TRUE(l.contains({Integer(3), Integer(3)}));
    EXPECT_FALSE(l.contains({Integer(1), Integer(0)}));
    const auto c = l.coordinates({Integer(4), Integer(6)});
    std::vector<Integer> back(2);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j)
            back[j] += c[i] * l.basis()(i, j);
    EXPECT_EQ(back, (std::vector<Integer>{4, 6}));
    EXPECT_THROW(l.coordinates({Integer(1), Integer(1)}), std::invalid_argument);
}

TEST(Lattice, PropertyKernelBasis)
{
    test::for_each_seed([](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> size(1, 4);
        for (int trial = 0; trial < 100; ++trial) {
            const IntMatrix a = to_matrix(random_small(rng, size(rng), size(rng) + 1, 6));
            const IntMatrix k = kernel_basis(a);
            const auto snf = smith_normal_form(a);
            ASSERT_EQ(k.rows(), a.cols() - snf.rank());
            if (k.rows()) {
                ASSERT_EQ(a * k.transpose(), IntMatrix(a.rows(), k.rows()));
            }
            // Saturated: the kernel has torsion-free cokernel in Z^c.
            ASSERT_TRUE(cokernel_group(k).torsion().empty());
        }
    });
}

TEST(Subquotient, Examples)
{
    EXPECT_EQ(subquotient(IntMatrix::identity(2), IntMatrix::from_rows({{4, 0}, {0, 6}})), z(2) + z(12));
    EXPECT_EQ(subquotient(IntMatrix::from_rows({{2, 0}}), IntMatrix::from_rows({{8, 0}})), z(4));
    EXPECT_EQ(subquotient(IntMatrix::from_rows({{1, 1}}), IntMatrix(0, 2)), FgAbGroup::free(1));
}
