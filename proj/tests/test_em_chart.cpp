#include <fstream>
#include <sstream>

#include "bpu/checks.hpp"
#include "bpu/em_chart.hpp"
#include "support.hpp"

using namespace bpu;
using namespace bpu::em;
using steenrod::OddPrime;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FgAbGroup z(long m)
{
    return FgAbGroup::cyclic(Integer(m));
}

}  // namespace

TEST(Chart, GeneratorsAndRanksAtP3)
{
    const EmChart c = build_chart(OddPrime(3), 12);
    ASSERT_EQ(c.generators().size(), 3u);
    EXPECT_EQ(c.generators()[1].label, "a1");
    EXPECT_EQ(c.generators()[1].dim, 7);
    EXPECT_EQ(c.generators()[2].dim, 8);
    const std::vector<std::size_t> ranks{1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 1, 0};
    for (int d = 0; d <= 12; ++d)
        EXPECT_EQ(c.rank(d), ranks[static_cast<std::size_t>(d)]) << d;
    EXPECT_EQ(c.rank(13), 0u);
    EXPECT_THROW(build_chart(OddPrime(3), 2), std::invalid_argument);
}

TEST(Chart, RanksAtP5)
{
    const EmChart c = build_chart(OddPrime(5), 11);
    for (int d = 0; d <= 11; ++d)
        EXPECT_EQ(c.rank(d), (d == 0 || d == 3 || d == 11) ? 1u : 0u) << d;
}

TEST(Chart, LabelsParseBack)
{
    const EmChart c = build_chart(OddPrime(3), 40);
    for (int d = 0; d <= 40; ++d)
        for (const auto& m : c.basis(d)) {
            EXPECT_EQ(c.parse(c.label(m)), m);
            EXPECT_EQ(c.dimension(m), d);
            EXPECT_EQ(c.index_of(d, m).has_value(), true);
        }
    EXPECT_EQ(c.label(c.parse("b1^2")), "b1^2");
    EXPECT_THROW(c.parse("q7"), std::invalid_argument);
    EXPECT_THROW(c.parse("x1 x1"), std::invalid_argument);
}

TEST(Chart, RanksStableUnderLargerBound)
{
    for (std::uint32_t q : {3u, 5u}) {
        const OddPrime p(q);
        const EmChart small = build_chart(p, 2 * static_cast<int>(q) + 5);
        const EmChart large = build_chart(p, 4 * static_cast<int>(q * q));
        for (int d = 0; d <= small.max_dim(); ++d)
            EXPECT_EQ(small.rank(d), large.rank(d)) << "p=" << q << " d=" << d;
    }
}

TEST(Bockstein, GeneratorRules)
{
    const EmChart c = build_chart(OddPrime(3), 20);
    using Terms = std::vector<std::pair<Exponents, std::uint32_t>>;
    EXPECT_EQ(c.bockstein(c.parse("a1")), (Terms{{c.parse("b1"), 1}}));
    EXPECT_EQ(c.bockstein(c.parse("x1 a1")), (Terms{{c.parse("x1 b1"), 2}}));
    EXPECT_TRUE(c.bockstein(c.parse("b1^2")).empty());
    EXPECT_TRUE(c.bockstein(c.parse("x1")).empty());
    EXPECT_THROW(bockstein_d1(c, 20), std::out_of_range);
    EXPECT_THROW(bockstein_d1(c, -1), std::out_of_range);
}

TEST(Bockstein, SquaresToZero)
{
    for (std::uint32_t q : {3u, 5u}) {
        const EmChart c = build_chart(OddPrime(q), 4 * static_cast<int>(q * q));
        for (int d = 0; d + 2 <= c.max_dim(); ++d)
            ASSERT_TRUE((bockstein_d1(c, d + 1) * bockstein_d1(c, d)).is_zero()) << "p=" << q << " d=" << d;
    }
}

TEST(Integral, Lemma21Values)
{
    const IntegralChart g = integral_reconstruct(build_chart(OddPrime(3), 12));
    EXPECT_EQ(g.groups.at(3), FgAbGroup::free(1));
    EXPECT_EQ(g.groups.at(8), z(3));
    for (int d : {1, 2, 4, 5, 6, 7, 9, 10})
        EXPECT_TRUE(g.groups.at(d).is_zero()) << d;
    EXPECT_EQ(g.groups.at(11), z(3));

    const IntegralChart g5 = integral_reconstruct(build_chart(OddPrime(5), 15));
    for (int d = 4; d <= 14; ++d)
        EXPECT_EQ(g5.groups.at(d), d == 12 ? z(5) : FgAbGroup::zero()) << d;
}

TEST(Integral, CollapseCertificateInRange)
{
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const IntegralChart g = integral_reconstruct(build_chart(OddPrime(q), 2 * static_cast<int>(q) + 5));
        for (int d = 0; d <= 2 * static_cast<int>(q) + 4; ++d)
            EXPECT_TRUE(g.certified[static_cast<std::size_t>(d)]) << "p=" << q << " d=" << d;
        EXPECT_TRUE(g.collapse());
    }
}

TEST(Lemma21, PassesForSmallPrimes)
{
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const ChartReport r = verify_lemma21(OddPrime(q));
        EXPECT_TRUE(r.pass) << q;
        EXPECT_TRUE(r.mismatches.empty());
        EXPECT_EQ(r.class_at_2p2, "b1");
        EXPECT_EQ(r.max_dim, 2 * static_cast<int>(q) + 5);
    }
}

TEST(YClass, CanonicalWordShape)
{
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const OddPrime p(q);
        for (unsigned k = 0; k <= 2; ++k) {
            const auto w = canonical_y_word(p, k);
            EXPECT_EQ(w.excess(p), 3);
            EXPECT_EQ(w.degree(p), 2 * p.power(k + 1) - 1);
            EXPECT_EQ(w.eps()[0], 1);
            for (std::size_t i = 0; i + 1 < w.length(); ++i)
                EXPECT_EQ(w.s()[i], q * w.s()[i + 1]);
        }
    }
}

TEST(YClass, SingleSurvivorWithUnitCoefficient)
{
    const std::vector<std::pair<std::uint32_t, unsigned>> cases{{3, 0}, {3, 1}, {3, 2}, {5, 0}, {7, 0}, {5, 1}};
    for (auto [q, k] : cases) {
        const OddPrime p(q);
        const YClassExpansion y = y_class_filtered_expansion(p, k);
        EXPECT_TRUE(y.pass) << q << "," << k;
        ASSERT_EQ(y.survivors.terms().size(), 1u);
        EXPECT_EQ(y.survivors.terms().begin()->first, canonical_y_word(p, k));
        EXPECT_EQ(y.survivors.terms().begin()->second, 1u);
    }
    EXPECT_EQ(y_class_filtered_expansion(OddPrime(3), 0).dropped_trailing_beta, 1u);
    EXPECT_EQ(canonical_y_word(OddPrime(3), 1).to_string(), "b P^3 P^1");
    EXPECT_EQ(canonical_y_word(OddPrime(3), 2).to_string(), "b P^9 P^3 P^1");
}

TEST(Golden, ChartJsonP3)
{
    EXPECT_EQ(checks::emit_chart(3, 12, checks::Format::json), slurp(BPU_GOLDEN_DIR "/em_chart_p3_d12.json"));
}

TEST(Golden, ChartMarkdownP5)
{
    EXPECT_EQ(checks::emit_chart(5, 15, checks::Format::md), slurp(BPU_GOLDEN_DIR "/em_chart_p5_d15.md"));
}

TEST(Golden, ChartRejectsBadBounds)
{
    EXPECT_THROW(checks::emit_chart(3, 2, checks::Format::json), checks::UsageError);
    EXPECT_THROW(checks::emit_chart(3, 1000, checks::Format::json), checks::UsageError);
    EXPECT_THROW(checks::emit_chart(4, 12, checks::Format::json), checks::UsageError);
}
