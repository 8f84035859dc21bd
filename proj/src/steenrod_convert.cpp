#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "bpu/fp_matrix.hpp"
#include "bpu/steenrod.hpp"

namespace bpu::steenrod {

namespace {

// Change of basis in one degree. Row i of to_milnor is the Milnor expansion of
// admissible[i]; from_milnor is its inverse.
struct ConversionTable {
    std::vector<AdmissibleWord> admissible;
    std::vector<MilnorMonomial> milnor;
    std::map<AdmissibleWord, std::size_t> admissible_index;
    std::map<MilnorMonomial, std::size_t> milnor_index;
    FpMatrix to_milnor;
    FpMatrix from_milnor;
};

MilnorElement letters_to_milnor(const OddPrime& p, const Word& w)
{
    MilnorElement acc(p, MilnorMonomial());
    for (auto letter : w) {
        MilnorMonomial m = letter == kBeta ? MilnorMonomial::q(0) : MilnorMonomial::p_power(letter);
        acc = milnor_product(acc, MilnorElement(p, m));
    }
    return acc;
}

std::shared_ptr<const ConversionTable> build_table(const OddPrime& p, std::uint64_t d)
{
    auto t = std::make_shared<ConversionTable>();
    t->admissible = admissible_basis(p, d);
    t->milnor = milnor_basis(p, d);
    if (t->admissible.size() != t->milnor.size())
        throw std::logic_error("conversion: basis sizes differ in degree " + std::to_string(d));
    const std::size_t n = t->admissible.size();
    for (std::size_t i = 0; i < n; ++i) {
        t->admissible_index[t->admissible[i]] = i;
        t->milnor_index[t->milnor[i]] = i;
    }
    t->to_milnor = FpMatrix(n, n, p.value());
    for (std::size_t i = 0; i < n; ++i) {
        MilnorElement x = letters_to_milnor(p, t->admissible[i].letters());
        for (const auto& [m, c] : x.terms())
            t->to_milnor(i, t->milnor_index.at(m)) = c;
    }
    auto inv = t->to_milnor.inverse();
    if (!inv)
        throw std::logic_error("conversion: change of basis is singular in degree " + std::to_string(d));
    t->from_milnor = std::move(*inv);
    return t;
}

// Guarded cache; tables are immutable once published.
std::shared_ptr<const ConversionTable> table_for(const OddPrime& p, std::uint64_t d)
{
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, std::uint64_t>, std::shared_ptr<const ConversionTable>> cache;
    const auto key = std::make_pair(p.value(), d);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    auto t = build_table(p, d);
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(t)).first->second;
}

template <class Mono>
std::uint64_t homogeneous_degree(const Element<Mono>& x)
{
    if (!x.is_homogeneous())
        throw std::invalid_argument("convert_basis: element is not homogeneous");
    return *x.degree();
}

}  // namespace

MilnorElement to_milnor(const AdmissibleElement& x)
{
    const OddPrime& p = x.prime();
    MilnorElement out(p);
    if (x.is_zero())
        return out;
    auto t = table_for(p, homogeneous_degree(x));
    const std::size_t n = t->milnor.size();
    for (const auto& [w, c] : x.terms()) {
        std::size_t i = t->admissible_index.at(w);
        for (std::size_t j = 0; j < n; ++j)
            if (t->to_milnor(i, j))
                out.add(t->milnor[j], p.mul(c, t->to_milnor(i, j)));
    }
    return out;
}

AdmissibleElement to_admissible(const MilnorElement& x)
{
    const OddPrime& p = x.prime();
    AdmissibleElement out(p);
    if (x.is_zero())
        return out;
    auto t = table_for(p, homogeneous_degree(x));
    const std::size_t n = t->milnor.size();
    FpMatrix v(1, n, p.value());
    for (const auto& [m, c] : x.terms())
        v(0, t->milnor_index.at(m)) = c;
    FpMatrix c = v * t->from_milnor;
    for (std::size_t i = 0; i < n; ++i)
        if (c(0, i))
            out.add(t->admissible[i], c(0, i));
    return out;
}

ExcessDegree excess_and_degree(const AdmissibleWord& w, const OddPrime& p)
{
    return {w.excess(p), w.degree(p)};
}

AdmissibleElement q_operation_admissible(const OddPrime& p, std::uint32_t j, AdemOptions opts)
{
    AdmissibleElement q(p, *AdmissibleWord::from_letters({kBeta}, p));
    for (std::uint32_t i = 0; i < j; ++i) {
        AdmissibleElement power(p, *AdmissibleWord::from_letters({p.power(i)}, p));
        AdmissibleElement left = admissible_product(power, q, opts);
        AdmissibleElement right = admissible_product(q, power, opts);
        q = i == 0 ? right - left : left - right;
    }
    return q;
}

MilnorElement q_operation_milnor(const OddPrime& p, std::uint32_t j)
{
    return MilnorElement(p, MilnorMonomial::q(j));
}

}  // namespace bpu::steenrod
