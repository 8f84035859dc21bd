// Straightening words in beta and P^s into the admissible basis.
//
// Odd-primary Adem relations, as tabulated in Steenrod-Epstein, "Cohomology
// Operations", Ch. VI (indices i run while the binomial's lower entry is >= 0):
//
//   a < p b:
//     P^a P^b = sum_i (-1)^{a+i} C((p-1)(b-i) - 1, a - p i) P^{a+b-i} P^i
//   a <= p b:
//     P^a b P^b = sum_i (-1)^{a+i}   C((p-1)(b-i),     a - p i)     b P^{a+b-i} P^i
//               + sum_i (-1)^{a+i+1} C((p-1)(b-i) - 1, a - p i - 1) P^{a+b-i} b P^i
//
// plus b b = 0. The transcription is cross-checked against the Milnor product
// by the oracle tests, not trusted on its own.
//
// Termination: with m(w) = sum_k k * s_k over the P letters of w (k = ordinal
// among P letters) and n(w) = number of (P letter, later beta) pairs, each
// rewrite strictly lowers (m, n) lexicographically. P^a P^b -> P^{a+b-i} P^i
// changes m by i - b < 0, and dropping a P^0 only shifts later letters down.
// The single term with i = b (only when a = p b in the beta relation) keeps m
// but moves the beta left past one P, lowering n. Words are processed in
// decreasing (m, n), so each word is expanded once.

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

#include "bpu/steenrod.hpp"

namespace bpu::steenrod {

namespace {

using Measure = std::pair<std::uint64_t, std::uint64_t>;

Measure measure(const Word& w)
{
    std::uint64_t m = 0, k = 0, n = 0;
    for (auto letter : w) {
        if (letter != kBeta)
            m += ++k * letter;
        else
            n += k;
    }
    return {m, n};
}

struct Rewrite {
    std::size_t begin;
    std::size_t length;
    std::vector<std::pair<Word, long long>> replacement;
};

long long sign_of(std::uint64_t e)
{
    return (e % 2) ? -1 : 1;
}

Word power_pair(std::uint64_t first, bool beta_between, std::uint64_t second, bool beta_first)
{
    Word w;
    if (beta_first)
        w.push_back(kBeta);
    if (first)
        w.push_back(first);
    if (beta_between)
        w.push_back(kBeta);
    if (second)
        w.push_back(second);
    return w;
}

// First non-admissible spot of w. nullopt if w is admissible; a rewrite with an
// empty replacement if w contains b b.
std::optional<Rewrite> find_rewrite(const OddPrime& p, const Word& w, const AdemOptions& opts)
{
    const std::uint64_t pp = p.value();
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
        if (w[j] == kBeta && w[j + 1] == kBeta)
            return Rewrite{j, 2, {}};
        if (w[j] == kBeta)
            continue;
        const std::uint64_t a = w[j];
        if (w[j + 1] != kBeta) {
            const std::uint64_t b = w[j + 1];
            if (a >= pp * b)
                continue;
            Rewrite rw{j, 2, {}};
            for (std::uint64_t i = 0; pp * i <= a; ++i) {
                long long c = sign_of(a + i) * p.binomial((pp - 1) * (b - i) - 1, a - pp * i);
                if (opts.inject_fault && i == 0)
                    c += 1;
                rw.replacement.emplace_back(power_pair(a + b - i, false, i, false), c);
            }
            return rw;
        }
        if (j + 2 >= w.size() || w[j + 2] == kBeta)
            continue;
        const std::uint64_t b = w[j + 2];
        if (a > pp * b)
            continue;
        Rewrite rw{j, 3, {}};
        for (std::uint64_t i = 0; pp * i <= a; ++i) {
            long long c = sign_of(a + i) * p.binomial((pp - 1) * (b - i), a - pp * i);
            rw.replacement.emplace_back(power_pair(a + b - i, false, i, true), c);
        }
        for (std::uint64_t i = 0; pp * i + 1 <= a; ++i) {
            long long c = sign_of(a + i + 1) * p.binomial((pp - 1) * (b - i) - 1, a - pp * i - 1);
            rw.replacement.emplace_back(power_pair(a + b - i, true, i, false), c);
        }
        return rw;
    }
    return std::nullopt;
}

}  // namespace

AdmissibleElement adem_straighten(const OddPrime& p, const Word& word, AdemOptions opts)
{
    AdmissibleElement out(p);
    using Key = std::pair<Measure, Word>;
    std::map<Key, long long, std::greater<>> pending;
    pending[{measure(word), word}] = 1;
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const auto& [m, w] = node.key();
        const long long coeff = node.mapped();
        if (coeff % p.value() == 0)
            continue;
        auto rw = find_rewrite(p, w, opts);
        if (!rw) {
            out.add(*AdmissibleWord::from_letters(w, p), coeff);
            continue;
        }
        for (const auto& [piece, c] : rw->replacement) {
            if (c % static_cast<long long>(p.value()) == 0)
                continue;
            Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(rw->begin));
            next.insert(next.end(), piece.begin(), piece.end());
            next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(rw->begin + rw->length), w.end());
            const Measure mn = measure(next);
            if (!(mn < m))
                throw std::logic_error("adem_straighten: rewrite did not decrease the measure");
            long long& slot = pending[{mn, std::move(next)}];
            slot = p.reduce(slot + static_cast<long long>(p.mul(p.reduce(c), p.reduce(coeff))));
        }
    }
    return out;
}

AdmissibleElement admissible_product(const AdmissibleElement& a, const AdmissibleElement& b, AdemOptions opts)
{
    if (!(a.prime() == b.prime()))
        throw std::invalid_argument("admissible_product: prime mismatch");
    const OddPrime& p = a.prime();
    AdmissibleElement out(p);
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word w = wa.letters();
            Word tail = wb.letters();
            w.insert(w.end(), tail.begin(), tail.end());
            out += adem_straighten(p, w, opts).scaled(p.mul(ca, cb));
        }
    return out;
}

}  // namespace bpu::steenrod
