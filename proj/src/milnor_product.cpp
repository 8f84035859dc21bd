// Milnor's product formula for the odd-primary Steenrod algebra.
//
// Q(E) P(R) * Q(F) P(S) is computed in two stages:
//   1. Move each Q_k of F (ascending) left across P(R) using
//        P(R) Q_k = Q_k P(R) + c_k sum_{i>=1} Q_{k+i} P(R - p^k e_i),
//      with c_0 = -1 and c_k = 1 for k >= 1 (the sign of Q_j against Milnor's),
//      then sort Q_{k+i} into the exterior part with the Koszul sign.
//   2. Multiply P(R') P(S) by summing over Milnor matrices X:
//        sum_j p^j X_{ij} = r_i (i >= 1),  sum_i X_{ij} = s_j (j >= 1),
//      giving coefficient prod_n multinomial(X_{n,0}, X_{n-1,1}, ..., X_{0,n})
//      on P(T) with T_n = sum_{i+j=n} X_{ij}.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "bpu/steenrod.hpp"

namespace bpu::steenrod {

namespace {

using Term = std::pair<std::vector<std::uint32_t>, std::vector<std::uint64_t>>;

// Q_E Q_m with E ascending: sign (-1)^{#{e in E : e > m}}; zero if m in E.
bool insert_exterior(std::vector<std::uint32_t>& e, std::uint32_t m, int& sign)
{
    auto it = std::lower_bound(e.begin(), e.end(), m);
    if (it != e.end() && *it == m)
        return false;
    auto larger = std::distance(it, e.end());
    if (larger % 2)
        sign = -sign;
    e.insert(it, m);
    return true;
}

void trim(std::vector<std::uint64_t>& r)
{
    while (!r.empty() && r.back() == 0)
        r.pop_back();
}

// Stage 1: Q(E) P(R) Q_{f_1} Q_{f_2} ... as a sum of Q(E') P(R').
std::map<Term, long long> commute_exterior(const OddPrime& p, const MilnorMonomial& a,
                                           const std::vector<std::uint32_t>& f)
{
    std::map<Term, long long> current;
    current[{a.e(), a.r()}] = 1;
    for (std::uint32_t k : f) {
        std::map<Term, long long> next;
        const std::uint64_t pk = p.power(k);
        for (const auto& [term, coeff] : current) {
            const auto& [e, r] = term;
            {
                auto e2 = e;
                int sign = 1;
                if (insert_exterior(e2, k, sign))
                    next[{std::move(e2), r}] += sign * coeff;
            }
            for (std::size_t i = 1; i <= r.size(); ++i) {
                if (r[i - 1] < pk)
                    continue;
                auto e2 = e;
                int sign = k == 0 ? -1 : 1;
                if (!insert_exterior(e2, k + static_cast<std::uint32_t>(i), sign))
                    continue;
                auto r2 = r;
                r2[i - 1] -= pk;
                trim(r2);
                next[{std::move(e2), std::move(r2)}] += sign * coeff;
            }
        }
        for (auto& [t, c] : next)
            c = p.reduce(c);
        std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
        current = std::move(next);
    }
    return current;
}

// Stage 2: enumerate Milnor matrices for P(R) P(S) and accumulate into out.
class MatrixEnumerator {
public:
    MatrixEnumerator(const OddPrime& p, const std::vector<std::uint64_t>& r, const std::vector<std::uint64_t>& s)
        : p_(p), r_(r), s_(s), rows_(r.size() + 1), cols_(s.size() + 1), x_(rows_ * cols_, 0)
    {
        for (std::size_t j = 1; j <= s.size(); ++j)
            pj_.push_back(p.power(static_cast<unsigned>(j)));
    }

    template <class F>
    void run(F&& emit)
    {
        col_left_ = s_;
        row_left_ = r_;
        visit(1, 1, emit);
    }

private:
    std::uint64_t& at(std::size_t i, std::size_t j) { return x_[i * cols_ + j]; }

    template <class F>
    void visit(std::size_t i, std::size_t j, F& emit)
    {
        if (i == rows_) {
            finish(emit);
            return;
        }
        if (j == cols_) {
            at(i, 0) = row_left_[i - 1];
            visit(i + 1, 1, emit);
            return;
        }
        const std::uint64_t w = pj_[j - 1];
        const std::uint64_t max_x = std::min(row_left_[i - 1] / w, col_left_[j - 1]);
        for (std::uint64_t x = 0; x <= max_x; ++x) {
            at(i, j) = x;
            row_left_[i - 1] -= x * w;
            col_left_[j - 1] -= x;
            visit(i, j + 1, emit);
            row_left_[i - 1] += x * w;
            col_left_[j - 1] += x;
        }
        at(i, j) = 0;
    }

    template <class F>
    void finish(F& emit)
    {
        for (std::size_t j = 1; j < cols_; ++j)
            at(0, j) = col_left_[j - 1];
        const std::size_t diags = rows_ + cols_ - 2;
        std::vector<std::uint64_t> t(diags, 0);
        std::uint32_t coeff = 1;
        std::vector<std::uint64_t> diagonal;
        for (std::size_t n = 1; n <= diags && coeff != 0; ++n) {
            diagonal.clear();
            for (std::size_t i = 0; i <= n && i < rows_; ++i) {
                std::size_t j = n - i;
                if (j < cols_)
                    diagonal.push_back(at(i, j));
            }
            coeff = p_.mul(coeff, p_.multinomial(diagonal));
            for (auto v : diagonal)
                t[n - 1] += v;
        }
        if (coeff == 0)
            return;
        trim(t);
        emit(std::move(t), coeff);
    }

    const OddPrime& p_;
    const std::vector<std::uint64_t>& r_;
    const std::vector<std::uint64_t>& s_;
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> x_;
    std::vector<std::uint64_t> pj_;
    std::vector<std::uint64_t> row_left_, col_left_;
};

}  // namespace

MilnorElement milnor_product(const OddPrime& p, const MilnorMonomial& a, const MilnorMonomial& b)
{
    MilnorElement out(p);
    for (const auto& [term, coeff] : commute_exterior(p, a, b.e())) {
        const auto& [e, r] = term;
        if (b.r().empty()) {
            out.add(MilnorMonomial(e, r), coeff);
            continue;
        }
        if (r.empty()) {
            out.add(MilnorMonomial(e, b.r()), coeff);
            continue;
        }
        MatrixEnumerator en(p, r, b.r());
        en.run([&](std::vector<std::uint64_t> t, std::uint32_t c) {
            out.add(MilnorMonomial(e, std::move(t)), static_cast<long long>(p.mul(c, static_cast<std::uint32_t>(coeff))));
        });
    }
    return out;
}

MilnorElement milnor_product(const MilnorElement& a, const MilnorElement& b)
{
    if (!(a.prime() == b.prime()))
        throw std::invalid_argument("milnor_product: prime mismatch");
    const OddPrime& p = a.prime();
    MilnorElement out(p);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            out += milnor_product(p, ma, mb).scaled(p.mul(ca, cb));
    return out;
}

}  // namespace bpu::steenrod
