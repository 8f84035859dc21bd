#include "bpu/em_chart.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bpu::em {

using steenrod::AdmissibleElement;
using steenrod::AdmissibleWord;
using steenrod::OddPrime;

EmChart::EmChart(const OddPrime& p, int max_dim) : p_(p), max_dim_(max_dim)
{
    if (max_dim < 3)
        throw std::invalid_argument("build_chart: max_dim must be at least 3");
    generators_.push_back({"x1", 0, 3});
    for (unsigned k = 1;; ++k) {
        const std::uint64_t pk = p.power(k);
        if (2 * pk + 1 > static_cast<std::uint64_t>(max_dim))
            break;
        const int a = static_cast<int>(2 * pk + 1);
        generators_.push_back({"a" + std::to_string(k), k, a});
        generators_.push_back({"b" + std::to_string(k), k, a + 1});
    }

    basis_.assign(static_cast<std::size_t>(max_dim) + 1, {});
    Exponents cur(generators_.size(), 0);
    auto visit = [&](auto&& self, std::size_t g, int dim) -> void {
        if (g == generators_.size()) {
            basis_[static_cast<std::size_t>(dim)].push_back(cur);
            return;
        }
        const EmGenerator& gen = generators_[g];
        const std::uint32_t cap = gen.exterior() ? 1 : static_cast<std::uint32_t>((max_dim - dim) / gen.dim);
        for (std::uint32_t e = 0; e <= cap && dim + static_cast<int>(e) * gen.dim <= max_dim; ++e) {
            cur[g] = e;
            self(self, g + 1, dim + static_cast<int>(e) * gen.dim);
        }
        cur[g] = 0;
    };
    visit(visit, 0, 0);

    index_.resize(basis_.size());
    for (std::size_t d = 0; d < basis_.size(); ++d) {
        std::sort(basis_[d].begin(), basis_[d].end());
        for (std::size_t i = 0; i < basis_[d].size(); ++i)
            index_[d][basis_[d][i]] = i;
    }
}

const std::vector<Exponents>& EmChart::basis(int d) const
{
    static const std::vector<Exponents> empty;
    if (d < 0 || d > max_dim_)
        return empty;
    return basis_[static_cast<std::size_t>(d)];
}

std::optional<std::size_t> EmChart::index_of(int d, const Exponents& m) const
{
    if (d < 0 || d > max_dim_)
        return std::nullopt;
    const auto& idx = index_[static_cast<std::size_t>(d)];
    auto it = idx.find(m);
    if (it == idx.end())
        return std::nullopt;
    return it->second;
}

int EmChart::dimension(const Exponents& m) const
{
    int d = 0;
    for (std::size_t g = 0; g < generators_.size(); ++g)
        d += static_cast<int>(m.at(g)) * generators_[g].dim;
    return d;
}

std::string EmChart::label(const Exponents& m) const
{
    std::string out;
    for (std::size_t g = 0; g < generators_.size(); ++g) {
        if (m.at(g) == 0)
            continue;
        if (!out.empty())
            out += ' ';
        out += generators_[g].label;
        if (m[g] > 1)
            out += '^' + std::to_string(m[g]);
    }
    return out.empty() ? "1" : out;
}

Exponents EmChart::parse(const std::string& text) const
{
    Exponents m(generators_.size(), 0);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "1")
            continue;
        std::uint32_t e = 1;
        std::string name = tok;
        if (auto caret = tok.find('^'); caret != std::string::npos) {
            name = tok.substr(0, caret);
            e = static_cast<std::uint32_t>(std::stoul(tok.substr(caret + 1)));
        }
        auto it = std::find_if(generators_.begin(), generators_.end(),
                               [&](const EmGenerator& g) { return g.label == name; });
        if (it == generators_.end())
            throw std::invalid_argument("unknown generator '" + name + "'");
        const auto g = static_cast<std::size_t>(it - generators_.begin());
        m[g] += e;
        if (it->exterior() && m[g] > 1)
            throw std::invalid_argument("exterior generator '" + name + "' repeated");
    }
    return m;
}

std::vector<std::pair<Exponents, std::uint32_t>> EmChart::bockstein(const Exponents& m) const
{
    std::vector<std::pair<Exponents, std::uint32_t>> out;
    int before = 0;
    for (std::size_t g = 0; g < generators_.size(); ++g) {
        const EmGenerator& gen = generators_[g];
        if (gen.k > 0 && gen.exterior() && m.at(g) == 1) {
            Exponents t = m;
            t[g] = 0;
            t[g + 1] += 1;
            out.emplace_back(std::move(t), p_.reduce(before % 2 ? -1 : 1));
        }
        before += static_cast<int>(m.at(g)) * gen.dim;
    }
    return out;
}

EmChart build_chart(const OddPrime& p, int max_dim)
{
    return EmChart(p, max_dim);
}

FpMatrix bockstein_d1(const EmChart& chart, int d)
{
    if (d < 0 || d >= chart.max_dim())
        throw std::out_of_range("bockstein_d1: dimension " + std::to_string(d) + " out of range");
    const auto& src = chart.basis(d);
    FpMatrix out(chart.rank(d + 1), src.size(), chart.prime().value());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& [t, c] : chart.bockstein(src[j]))
            out(*chart.index_of(d + 1, t), j) = c;
    return out;
}

bool IntegralChart::collapse() const
{
    return std::all_of(certified.begin(), certified.end(), [](bool b) { return b; });
}

IntegralChart integral_reconstruct(const EmChart& chart)
{
    const int top = chart.max_dim() - 1;
    const std::uint32_t p = chart.prime().value();
    std::vector<std::size_t> d1_rank(static_cast<std::size_t>(chart.max_dim()), 0);
    for (int d = 0; d < chart.max_dim(); ++d)
        d1_rank[static_cast<std::size_t>(d)] = bockstein_d1(chart, d).rank();

    IntegralChart out;
    std::vector<FgAbGroup> groups;
    for (int d = 0; d <= top; ++d) {
        const auto ud = static_cast<std::size_t>(d);
        const std::size_t rank = chart.rank(d);
        const std::size_t into = d > 0 ? d1_rank[ud - 1] : 0;
        const std::size_t homology = rank - d1_rank[ud] - into;
        const std::size_t free_rank = (d == 0 || d == 3) ? 1 : 0;
        out.mod_p_rank.push_back(rank);
        out.homology_rank.push_back(homology);
        out.torsion_rank.push_back(into);
        out.certified.push_back(homology == free_rank);
        groups.push_back(FgAbGroup::from_cyclic_orders(free_rank, std::vector<Integer>(into, Integer(p))));
    }
    out.groups = GradedAbGroup(std::move(groups));
    return out;
}

ChartReport verify_lemma21(const OddPrime& p)
{
    const int pp = static_cast<int>(p.value());
    ChartReport r;
    r.p = p.value();
    r.max_dim = 2 * pp + 5;
    const EmChart chart = build_chart(p, r.max_dim);
    r.integral = integral_reconstruct(chart);
    for (int i = 1; i <= 2 * pp + 4; ++i) {
        FgAbGroup want;
        if (i == 3)
            want = FgAbGroup::free(1);
        else if (i == 2 * pp + 2)
            want = FgAbGroup::cyclic(pp);
        r.expected[i] = want;
        if (!r.integral.certified[static_cast<std::size_t>(i)] || !(r.integral.groups.at(i) == want))
            r.mismatches.push_back(i);
    }
    const auto& top = chart.basis(2 * pp + 2);
    r.class_at_2p2 = top.size() == 1 ? chart.label(top[0]) : "";
    r.pass = r.mismatches.empty() && r.class_at_2p2 == "b1";
    return r;
}

AdmissibleWord canonical_y_word(const OddPrime& p, unsigned k)
{
    std::vector<std::uint8_t> eps(k + 2, 0);
    eps[0] = 1;
    std::vector<std::uint64_t> s;
    for (unsigned i = k + 1; i-- > 0;)
        s.push_back(p.power(i));
    return AdmissibleWord(std::move(eps), std::move(s), p);
}

YClassExpansion y_class_filtered_expansion(const OddPrime& p, unsigned k)
{
    YClassExpansion out{steenrod::to_admissible(steenrod::q_operation_milnor(p, k + 1)), AdmissibleElement(p), 0, 0,
                        canonical_y_word(p, k), false};
    const std::uint64_t degree = 2 * p.power(k + 1) - 1;
    for (const auto& [w, c] : out.q.terms()) {
        if (w.eps().back() == 1) {
            ++out.dropped_trailing_beta;
            continue;
        }
        const long long e = w.excess(p);
        if (e > 3) {
            ++out.dropped_excess;
            continue;
        }
        // Excess 3 without a leading beta would be a p-th power, which needs
        // p | 3 + degree.
        if (e == 3 && w.eps()[0] == 0)
            throw std::runtime_error("unhandled p-th power term: " + w.to_string() +
                                     ((3 + degree) % p.value() ? " (dimension not divisible by p)" : ""));
        out.survivors.add(w, c);
    }
    out.pass = out.survivors == AdmissibleElement(p, out.expected);
    return out;
}

}  // namespace bpu::em
