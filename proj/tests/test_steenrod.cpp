#include "bpu/steenrod.hpp"
#include "support.hpp"

using namespace bpu::steenrod;

namespace {

long long binom_exact(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

long long mod(long long a, long long p)
{
    return ((a % p) + p) % p;
}

AdmissibleWord word(const OddPrime& p, std::vector<std::uint8_t> eps, std::vector<std::uint64_t> s)
{
    return AdmissibleWord(std::move(eps), std::move(s), p);
}

// Adem relations written out from the closed formulas, integer binomials reduced mod p.
AdmissibleElement adem_pp_oracle(const OddPrime& p, std::uint64_t a, std::uint64_t b)
{
    const long long q = p.value();
    AdmissibleElement out(p);
    for (std::uint64_t t = 0; q * t <= a; ++t) {
        const long long c = ((a + t) % 2 ? -1 : 1) *
                            binom_exact((q - 1) * static_cast<long long>(b - t) - 1, static_cast<long long>(a - q * t));
        if (mod(c, q) == 0)
            continue;
        std::vector<std::uint64_t> s{a + b - t};
        if (t)
            s.push_back(t);
        out.add(word(p, std::vector<std::uint8_t>(s.size() + 1, 0), s), c);
    }
    return out;
}

AdmissibleElement adem_pbp_oracle(const OddPrime& p, std::uint64_t a, std::uint64_t b)
{
    const long long q = p.value();
    AdmissibleElement out(p);
    for (std::uint64_t t = 0; q * t <= a; ++t) {
        const long long bt = static_cast<long long>(b - t), at = static_cast<long long>(a - q * t);
        const long long c1 = ((a + t) % 2 ? -1 : 1) * binom_exact((q - 1) * bt, at);
        const long long c2 = ((a + t + 1) % 2 ? -1 : 1) * binom_exact((q - 1) * bt - 1, at - 1);
        std::vector<std::uint64_t> s{a + b - t};
        if (t)
            s.push_back(t);
        std::vector<std::uint8_t> lead(s.size() + 1, 0), mid(s.size() + 1, 0);
        lead[0] = 1;
        mid[1] = 1;
        if (mod(c1, q))
            out.add(word(p, lead, s), c1);
        if (mod(c2, q))
            out.add(word(p, mid, s), c2);
    }
    return out;
}

AdmissibleElement single(const OddPrime& p, const AdmissibleWord& w, long long c = 1)
{
    return AdmissibleElement(p, w, c);
}

MilnorElement milnor(const OddPrime& p, std::vector<std::uint32_t> e, std::vector<std::uint64_t> r, long long c = 1)
{
    return MilnorElement(p, MilnorMonomial(std::move(e), std::move(r)), c);
}

}  // namespace

TEST(OddPrime, RejectsBadInput)
{
    EXPECT_THROW(OddPrime(2), std::invalid_argument);
    EXPECT_THROW(OddPrime(9), std::invalid_argument);
    EXPECT_EQ(OddPrime(5).power(3), 125u);
    EXPECT_EQ(OddPrime(3).binomial(5, 1), 2u);
}

TEST(Basis, SmallDegrees)
{
    const OddPrime p(3);
    EXPECT_EQ(milnor_basis(p, 1), (std::vector<MilnorMonomial>{MilnorMonomial::q(0)}));
    EXPECT_EQ(admissible_basis(p, 4), (std::vector<AdmissibleWord>{word(p, {0, 0}, {1})}));
    EXPECT_EQ(admissible_basis(p, 17).size(), milnor_basis(p, 17).size());
    EXPECT_TRUE(admissible_basis(p, 2).empty());
}

TEST(Basis, CountsAgreeThroughDegree40AtP3And30AtP5)
{
    for (auto [q, top] : {std::pair{3u, 40u}, std::pair{5u, 30u}}) {
        const OddPrime p(q);
        for (std::uint64_t d = 0; d <= top; ++d)
            EXPECT_EQ(admissible_basis(p, d).size(), milnor_basis(p, d).size()) << "p=" << q << " d=" << d;
    }
}

TEST(Basis, EveryAdmissibleWordIsAdmissible)
{
    const OddPrime p(3);
    for (std::uint64_t d = 0; d <= 40; ++d)
        for (const auto& w : admissible_basis(p, d)) {
            ASSERT_EQ(w.degree(p), d);
            for (std::size_t i = 0; i + 1 < w.length(); ++i)
                ASSERT_GE(w.s()[i], p.value() * w.s()[i + 1] + w.eps()[i + 1]) << w.to_string();
        }
}

TEST(MilnorProduct, Examples)
{
    const OddPrime p(3);
    EXPECT_TRUE(milnor_product(p, MilnorMonomial::q(0), MilnorMonomial::q(0)).is_zero());
    EXPECT_EQ(milnor_product(p, MilnorMonomial::p_power(1), MilnorMonomial::p_power(1)), milnor(p, {}, {2}, 2));
    EXPECT_EQ(milnor_product(p, MilnorMonomial::q(0), MilnorMonomial::q(1)), milnor(p, {0, 1}, {}));
    EXPECT_EQ(milnor_product(p, MilnorMonomial::q(1), MilnorMonomial::q(0)), milnor(p, {0, 1}, {}, 2));
    EXPECT_THROW(milnor_product(milnor(p, {}, {1}), milnor(OddPrime(5), {}, {1})), std::invalid_argument);
}

TEST(MilnorProduct, PropertyAssociativeAndDegreeAdditive)
{
    for (std::uint32_t q : {3u, 5u}) {
        const OddPrime p(q);
        std::vector<MilnorMonomial> all;
        for (std::uint64_t d = 0; d <= 30; ++d)
            for (auto& m : milnor_basis(p, d))
                all.push_back(m);
        bpu::test::for_each_seed([&](std::mt19937_64& rng) {
            std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
            int checked = 0;
            while (checked < 150) {
                const auto &a = all[pick(rng)], &b = all[pick(rng)], &c = all[pick(rng)];
                if (a.degree(p) + b.degree(p) + c.degree(p) > 40)
                    continue;
                ++checked;
                const MilnorElement ab = milnor_product(p, a, b);
                if (!ab.is_zero()) {
                    ASSERT_TRUE(ab.is_homogeneous());
                    ASSERT_EQ(*ab.degree(), a.degree(p) + b.degree(p));
                }
                ASSERT_EQ(milnor_product(ab, MilnorElement(p, c)),
                          milnor_product(MilnorElement(p, a), milnor_product(p, b, c)))
                    << a.to_string() << " * " << b.to_string() << " * " << c.to_string();
            }
        });
    }
}

TEST(Adem, Examples)
{
    const OddPrime p(3);
    EXPECT_EQ(adem_straighten(p, {1, 1}), single(p, word(p, {0, 0}, {2}), 2));
    EXPECT_TRUE(adem_straighten(p, {kBeta, kBeta}).is_zero());
    EXPECT_EQ(adem_straighten(p, {3, 1}), single(p, word(p, {0, 0, 0}, {3, 1})));
    EXPECT_TRUE(adem_straighten(p, {1, 2}).is_zero());
    EXPECT_EQ(adem_straighten(p, {1, 3}), single(p, word(p, {0, 0}, {4})));
    EXPECT_EQ(adem_straighten(p, {1, kBeta, 1}), single(p, word(p, {1, 0}, {2})) + single(p, word(p, {0, 1}, {2})));
}

TEST(Adem, TwoLetterRelationsMatchClosedFormula)
{
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const OddPrime p(q);
        for (std::uint64_t b = 1; b <= 8; ++b)
            for (std::uint64_t a = 1; a <= q * b && a <= 3 * q; ++a) {
                if (a < q * b) {
                    EXPECT_EQ(adem_straighten(p, {a, b}), adem_pp_oracle(p, a, b))
                        << "p=" << q << " P^" << a << " P^" << b;
                }
                EXPECT_EQ(adem_straighten(p, {a, kBeta, b}), adem_pbp_oracle(p, a, b))
                    << "p=" << q << " P^" << a << " b P^" << b;
            }
    }
}

TEST(Adem, InjectedFaultChangesAResult)
{
    const OddPrime p(3);
    bool differs = false;
    for (std::uint64_t a = 1; a <= 6 && !differs; ++a)
        for (std::uint64_t b = 1; b <= 4 && !differs; ++b)
            differs = !(adem_straighten(p, {a, b}) == adem_straighten(p, {a, b}, {true}));
    EXPECT_TRUE(differs);
}

TEST(Adem, PropertyStraighteningIsAdmissibleAndHomogeneous)
{
    const OddPrime p(3);
    bpu::test::for_each_seed([&](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> len(1, 5), letter(0, 6);
        for (int trial = 0; trial < 200; ++trial) {
            Word w;
            const int n = len(rng);
            std::uint64_t degree = 0;
            for (int i = 0; i < n; ++i) {
                const auto s = static_cast<std::uint64_t>(letter(rng));
                w.push_back(s);
                degree += s == kBeta ? 1 : 4 * s;
            }
            if (degree > 60)
                continue;
            const AdmissibleElement x = adem_straighten(p, w);
            for (const auto& [m, c] : x.terms()) {
                ASSERT_NE(c, 0u);
                ASSERT_EQ(m.degree(p), degree);
            }
            // Straightening is multiplicative: (w1)(w2) = straighten(w1 w2).
            const std::size_t cut = w.size() / 2;
            const Word left(w.begin(), w.begin() + static_cast<long>(cut)), right(w.begin() + static_cast<long>(cut), w.end());
            ASSERT_EQ(admissible_product(adem_straighten(p, left), adem_straighten(p, right)), x);
        }
    });
}

TEST(Conversion, Examples)
{
    const OddPrime p(3);
    EXPECT_EQ(to_milnor(single(p, word(p, {1}, {}))), milnor(p, {0}, {}));
    EXPECT_EQ(to_milnor(single(p, word(p, {0, 0}, {1}))), milnor(p, {}, {1}));
    EXPECT_EQ(to_admissible(milnor(p, {1}, {})), single(p, word(p, {1, 0}, {1})) - single(p, word(p, {0, 1}, {1})));
    EXPECT_EQ(to_admissible(milnor(p, {1}, {})), q_operation_admissible(p, 1));
}

TEST(Conversion, RoundTripEveryBasisElement)
{
    for (auto [q, top] : {std::pair{3u, 40u}, std::pair{5u, 30u}}) {
        const OddPrime p(q);
        for (std::uint64_t d = 0; d <= top; ++d) {
            for (const auto& m : milnor_basis(p, d))
                ASSERT_EQ(to_milnor(to_admissible(MilnorElement(p, m))), MilnorElement(p, m)) << m.to_string();
            for (const auto& w : admissible_basis(p, d))
                ASSERT_EQ(to_admissible(to_milnor(AdmissibleElement(p, w))), AdmissibleElement(p, w)) << w.to_string();
        }
    }
}

TEST(Oracle, MilnorProductAgreesWithAdemStraightening)
{
    for (auto [q, top] : {std::pair{3u, 40u}, std::pair{5u, 30u}}) {
        const OddPrime p(q);
        std::vector<std::vector<MilnorMonomial>> basis;
        for (std::uint64_t d = 0; d <= top; ++d)
            basis.push_back(milnor_basis(p, d));
        for (std::uint64_t da = 0; da <= top; ++da)
            for (std::uint64_t db = 0; da + db <= top; ++db)
                for (const auto& a : basis[da])
                    for (const auto& b : basis[db]) {
                        const AdmissibleElement lhs = to_admissible(milnor_product(p, a, b));
                        const AdmissibleElement rhs = admissible_product(to_admissible(MilnorElement(p, a)),
                                                                         to_admissible(MilnorElement(p, b)));
                        ASSERT_EQ(lhs, rhs) << "p=" << q << " " << a.to_string() << " * " << b.to_string();
                    }
    }
}

TEST(ExcessDegree, Examples)
{
    const OddPrime p(3);
    EXPECT_EQ(word(p, {0, 0}, {1}).excess(p), 2);
    EXPECT_EQ(word(p, {0, 0}, {1}).degree(p), 4u);
    EXPECT_EQ(word(p, {1, 0, 0}, {3, 1}).excess(p), 3);
    EXPECT_EQ(word(p, {1, 0, 0}, {3, 1}).degree(p), 17u);
    EXPECT_EQ(word(p, {1}, {}).excess(p), 1);
    EXPECT_EQ(word(p, {1}, {}).degree(p), 1u);
    const auto ed = excess_and_degree(word(p, {1, 0, 0}, {3, 1}), p);
    EXPECT_EQ(ed.excess, 3);
    EXPECT_EQ(ed.degree, 17u);
}

TEST(QOperations, RecursionMatchesMilnorPrimitive)
{
    for (std::uint32_t q : {3u, 5u}) {
        const OddPrime p(q);
        EXPECT_EQ(q_operation_admissible(p, 0), single(p, word(p, {1}, {})));
        for (std::uint32_t j = 0; 2 * p.power(j) - 1 <= 60; ++j) {
            const AdmissibleElement x = q_operation_admissible(p, j);
            EXPECT_EQ(to_milnor(x), q_operation_milnor(p, j)) << "p=" << q << " j=" << j;
            EXPECT_EQ(*x.degree(), 2 * p.power(j) - 1);
        }
    }
}

TEST(QOperations, ExteriorRelationsThroughQ3)
{
    const OddPrime p(3);
    for (std::uint32_t i = 0; i <= 3; ++i) {
        const MilnorElement qi = q_operation_milnor(p, i);
        EXPECT_TRUE(milnor_product(qi, qi).is_zero());
        for (std::uint32_t j = 0; j <= 3; ++j) {
            const MilnorElement qj = q_operation_milnor(p, j);
            EXPECT_TRUE((milnor_product(qi, qj) + milnor_product(qj, qi)).is_zero()) << i << "," << j;
        }
    }
    for (std::uint32_t mask = 1; mask < 16; ++mask) {
        MilnorElement prod(p, MilnorMonomial());
        std::vector<std::uint32_t> e;
        for (std::uint32_t i = 0; i < 4; ++i)
            if (mask & (1u << i)) {
                prod = milnor_product(prod, q_operation_milnor(p, i));
                e.push_back(i);
            }
        EXPECT_EQ(prod, milnor(p, e, {}));
    }
}

TEST(Parsing, TextForms)
{
    const OddPrime p(3);
    EXPECT_EQ(parse_word("b P^3 P^1"), (Word{kBeta, 3, 1}));
    EXPECT_EQ(parse_admissible(p, "2 P^2 - b P^1"),
              single(p, word(p, {0, 0}, {2}), 2) - single(p, word(p, {1, 0}, {1})));
    EXPECT_EQ(parse_milnor(p, "Q(0,1) P(1)"), milnor(p, {0, 1}, {1}));
    EXPECT_EQ(word(p, {1, 0, 0}, {3, 1}).to_string(), "b P^3 P^1");
    EXPECT_THROW(parse_word("P^"), std::invalid_argument);
    EXPECT_THROW(parse_admissible(p, "P^1 P^1"), std::invalid_argument);
}
