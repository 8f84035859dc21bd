#include "bpu/pu_matrices.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace bpu::pu {

namespace {

std::size_t reduce_exp(long long k, std::size_t n)
{
    const long long m = static_cast<long long>(n);
    return static_cast<std::size_t>(((k % m) + m) % m);
}

void check_modulus(const CycloElt& a, const CycloElt& b)
{
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("CycloElt: modulus mismatch");
}

// Sort key x^i beta^j alpha^k -> (k, j, i).
using Coords = std::tuple<std::size_t, std::size_t, std::size_t>;

std::optional<Coords> v_coordinates(const CycloMatrix& m, const Generators& g)
{
    const std::size_t n = m.size();
    std::optional<std::size_t> k;
    for (std::size_t i = 0; i < n; ++i)
        if (!m(i, 0).is_zero()) {
            k = i;
            break;
        }
    if (!k)
        return std::nullopt;
    // m alpha^{-k} should be diagonal.
    CycloMatrix d = m * g.alpha.pow(n - *k);
    auto ij = w_coordinates(d, g);
    if (!ij)
        return std::nullopt;
    return Coords{*k, ij->second, ij->first};
}

std::string coords_label(const Coords& c)
{
    const auto& [k, j, i] = c;
    std::string out;
    auto part = [&](const char* name, std::size_t e) {
        if (e == 0)
            return;
        if (!out.empty())
            out += ' ';
        out += name;
        if (e > 1)
            out += '^' + std::to_string(e);
    };
    part("x", i);
    part("b", j);
    part("a", k);
    return out.empty() ? "1" : out;
}

}  // namespace

CycloElt::CycloElt(std::size_t n) : n_(n)
{
    if (n == 0)
        throw std::invalid_argument("CycloElt: modulus must be positive");
}

CycloElt::CycloElt(std::size_t n, std::vector<Integer> coeffs) : CycloElt(n)
{
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] != 0)
            terms_.emplace_back(k % n, std::move(coeffs[k]));
    normalize();
}

void CycloElt::normalize()
{
    std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::size_t, Integer>> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().first == t.first)
            merged.back().second += t.second;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const auto& t) { return t.second == 0; });
    terms_ = std::move(merged);
}

CycloElt CycloElt::monomial(std::size_t n, long long k, const Integer& c)
{
    CycloElt out(n);
    if (c != 0)
        out.terms_.emplace_back(reduce_exp(k, n), c);
    return out;
}

std::vector<Integer> CycloElt::coeffs() const
{
    std::vector<Integer> out(n_, 0);
    for (const auto& [k, c] : terms_)
        out[k] = c;
    return out;
}

std::optional<std::pair<std::size_t, Integer>> CycloElt::as_monomial() const
{
    if (terms_.size() != 1)
        return std::nullopt;
    return terms_.front();
}

CycloElt CycloElt::shifted(long long k) const
{
    const std::size_t r = reduce_exp(k, n_);
    CycloElt out(n_);
    out.terms_.reserve(terms_.size());
    for (const auto& [e, c] : terms_)
        out.terms_.emplace_back((e + r) % n_, c);
    std::rotate(out.terms_.begin(),
                std::find_if(out.terms_.begin(), out.terms_.end(), [&](const auto& t) { return t.first < r; }),
                out.terms_.end());
    return out;
}

CycloElt& CycloElt::operator+=(const CycloElt& o)
{
    check_modulus(*this, o);
    if (o.terms_.empty())
        return *this;
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

void CycloElt::add_product(const CycloElt& a, const CycloElt& b)
{
    check_modulus(a, b);
    check_modulus(*this, a);
    if (a.terms_.empty() || b.terms_.empty())
        return;
    for (const auto& [i, ci] : a.terms_)
        for (const auto& [j, cj] : b.terms_)
            terms_.emplace_back((i + j) % n_, ci * cj);
    normalize();
}

CycloElt operator+(const CycloElt& a, const CycloElt& b)
{
    CycloElt out = a;
    return out += b;
}

CycloElt operator-(const CycloElt& a, const CycloElt& b)
{
    check_modulus(a, b);
    CycloElt out = a;
    for (const auto& [k, c] : b.terms_)
        out.terms_.emplace_back(k, -c);
    out.normalize();
    return out;
}

CycloElt operator*(const CycloElt& a, const CycloElt& b)
{
    CycloElt out(a.modulus());
    out.add_product(a, b);
    return out;
}

std::string CycloElt::to_string() const
{
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        const bool neg = c < 0;
        Integer mag = neg ? Integer(-c) : c;
        if (out.empty())
            out = neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const std::string var = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
        if (mag != 1 || var.empty())
            out += mag.get_str();
        out += var;
    }
    return out.empty() ? "0" : out;
}

CycloMatrix::CycloMatrix(std::size_t n) : n_(n), entries_(n * n, CycloElt(n)) {}

CycloMatrix CycloMatrix::identity(std::size_t n)
{
    return scalar(n, 0);
}

CycloMatrix CycloMatrix::scalar(std::size_t n, long long k)
{
    CycloMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        out(i, i) = CycloElt::monomial(n, k);
    return out;
}

CycloMatrix CycloMatrix::pow(std::uint64_t e) const
{
    CycloMatrix out = identity(n_), base = *this;
    for (; e; e >>= 1) {
        if (e & 1)
            out = out * base;
        base = base * base;
    }
    return out;
}

CycloMatrix CycloMatrix::shifted(long long k) const
{
    CycloMatrix out = *this;
    for (auto& e : out.entries_)
        e = e.shifted(k);
    return out;
}

bool CycloMatrix::entries_monomial() const
{
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const CycloElt& e) { return e.is_zero() || e.as_monomial().has_value(); });
}

bool CycloMatrix::is_monomial_matrix() const
{
    if (!entries_monomial())
        return false;
    std::vector<int> col_count(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        int row_count = 0;
        for (std::size_t j = 0; j < n_; ++j)
            if (!(*this)(i, j).is_zero()) {
                ++row_count;
                ++col_count[j];
            }
        if (row_count != 1)
            return false;
    }
    return std::all_of(col_count.begin(), col_count.end(), [](int c) { return c == 1; });
}

std::optional<CycloElt> CycloMatrix::monomial_determinant() const
{
    if (!is_monomial_matrix())
        return std::nullopt;
    std::vector<std::size_t> perm(n_);
    CycloElt det = CycloElt::monomial(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (!(*this)(i, j).is_zero()) {
                perm[i] = j;
                det = det * (*this)(i, j);
            }
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            inversions += perm[i] > perm[j];
    if (inversions % 2)
        det = CycloElt(n_) - det;
    return det;
}

CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b)
{
    if (a.n_ != b.n_)
        throw std::invalid_argument("CycloMatrix: size mismatch");
    const std::size_t n = a.n_;
    // Nonzero pattern of b by row.
    std::vector<std::vector<std::size_t>> b_support(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            if (!b(k, j).is_zero())
                b_support[k].push_back(j);
    CycloMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const CycloElt& aik = a(i, k);
            if (b_support[k].empty() || aik.is_zero())
                continue;
            for (std::size_t j : b_support[k])
                out(i, j).add_product(aik, b(k, j));
        }
    return out;
}

std::string CycloMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < n_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < n_; ++j)
            os << (j ? ", " : "") << (*this)(i, j).to_string();
        os << ']';
    }
    os << ']';
    return os.str();
}

Generators build_generators(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("build_generators: n must be at least 2");
    Generators g{CycloMatrix(n), CycloMatrix(n)};
    for (std::size_t j = 0; j < n; ++j) {
        g.alpha((j + 1) % n, j) = CycloElt::monomial(n, 0);
        g.beta(j, j) = CycloElt::monomial(n, static_cast<long long>(j + 1));
    }
    return g;
}

RelationsReport verify_relations(std::size_t n)
{
    const Generators g = build_generators(n);
    RelationsReport r;
    r.n = n;
    bool monomial = true;
    auto track = [&](const CycloMatrix& m) -> const CycloMatrix& {
        monomial = monomial && m.entries_monomial();
        return m;
    };
    const CycloMatrix ba = track(g.beta * g.alpha);
    const CycloMatrix xab = track(track(g.alpha * g.beta).shifted(1));
    r.commutation = ba == xab;
    if (!r.commutation)
        r.failures.push_back("beta' alpha' != x alpha' beta'");
    const CycloMatrix id = CycloMatrix::identity(n);
    r.alpha_order = track(g.alpha.pow(n)) == id;
    if (!r.alpha_order)
        r.failures.push_back("alpha'^n != I");
    r.beta_order = track(g.beta.pow(n)) == id;
    if (!r.beta_order)
        r.failures.push_back("beta'^n != I");

    const CycloMatrix alpha_inv = track(g.alpha.pow(n - 1));
    r.conjugation = true;
    CycloMatrix beta_j = id;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const CycloMatrix w = track(beta_j.shifted(static_cast<long long>(i)));
            const CycloMatrix lhs = track(track(g.alpha * w) * alpha_inv);
            const CycloMatrix rhs = track(beta_j.shifted(static_cast<long long>(i) - static_cast<long long>(j)));
            if (!(lhs == rhs)) {
                r.conjugation = false;
                r.failures.push_back("conjugation fails at (i, j) = (" + std::to_string(i) + ", " + std::to_string(j) +
                                     ")");
            }
        }
        beta_j = track(beta_j * g.beta);
    }
    r.monomial_closed = monomial;
    if (!monomial)
        r.failures.push_back("a product left the monomial matrices");
    return r;
}

std::optional<std::pair<std::size_t, std::size_t>> w_coordinates(const CycloMatrix& m, const Generators& g)
{
    const std::size_t n = m.size();
    const auto last = m(n - 1, n - 1).as_monomial();
    const auto first = m(0, 0).as_monomial();
    if (!last || !first || last->second != 1 || first->second != 1)
        return std::nullopt;
    const std::size_t i = last->first;
    const std::size_t j = reduce_exp(static_cast<long long>(first->first) - static_cast<long long>(i), n);
    if (!(CycloMatrix::scalar(n, static_cast<long long>(i)) * g.beta.pow(j) == m))
        return std::nullopt;
    return std::make_pair(i, j);
}

PhiAction extract_phi_action(std::size_t n)
{
    const Generators g = build_generators(n);
    const CycloMatrix alpha_inv = g.alpha.pow(n - 1);
    PhiAction out;
    out.n = n;
    out.matrix = IntMatrix(2, 2);
    const CycloMatrix images[2] = {g.alpha * CycloMatrix::scalar(n, 1) * alpha_inv, g.alpha * g.beta * alpha_inv};
    for (std::size_t c = 0; c < 2; ++c) {
        auto ij = w_coordinates(images[c], g);
        if (!ij)
            throw std::logic_error("extract_phi_action: conjugate falls outside W_n");
        out.matrix(0, c) = static_cast<unsigned long>(ij->first);
        out.matrix(1, c) = static_cast<unsigned long>(ij->second);
    }
    const IntMatrix expected = IntMatrix::from_rows({{1, -1}, {0, 1}});
    const Integer nn = static_cast<unsigned long>(n);
    out.matches_expected = true;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Integer diff = out.matrix(i, j) - expected(i, j);
            out.matches_expected = out.matches_expected && diff % nn == 0;
        }
    return out;
}

VprimeGroup enumerate_group(std::size_t n, std::size_t max_order)
{
    const Generators g = build_generators(n);
    std::map<std::string, std::size_t> seen;
    std::vector<CycloMatrix> found{CycloMatrix::identity(n)};
    seen[found[0].to_string()] = 0;
    for (std::size_t i = 0; i < found.size(); ++i)
        for (const CycloMatrix* s : {&g.alpha, &g.beta}) {
            CycloMatrix m = found[i] * *s;
            std::string key = m.to_string();
            if (seen.count(key))
                continue;
            if (found.size() == max_order)
                throw std::length_error("group enumeration cap exceeded");
            seen.emplace(std::move(key), found.size());
            found.push_back(std::move(m));
        }

    std::vector<std::pair<Coords, CycloMatrix>> keyed;
    for (auto& m : found) {
        auto c = v_coordinates(m, g);
        if (!c)
            throw std::logic_error("enumerate_group: element is not of the form x^i b^j a^k");
        keyed.emplace_back(*c, std::move(m));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    VprimeGroup out;
    out.n = n;
    const std::size_t order = keyed.size();
    std::map<std::string, std::uint32_t> index;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < order; ++i) {
        index[keyed[i].second.to_string()] = static_cast<std::uint32_t>(i);
        labels.push_back(coords_label(keyed[i].first));
        out.elements.push_back(keyed[i].second);
    }
    std::vector<std::uint32_t> product(order * order);
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b)
            product[a * order + b] = index.at((out.elements[a] * out.elements[b]).to_string());
    auto idx = [&](const CycloMatrix& m) { return index.at(m.to_string()); };
    out.table = MultiplicationTable(std::move(product), idx(CycloMatrix::identity(n)), std::move(labels),
                                    {idx(g.alpha), idx(g.beta)});

    out.order_ok = order == n * n * n;
    const std::uint32_t x = idx(CycloMatrix::scalar(n, 1));
    out.center_has_scalar = center(out.table)[x];
    const auto w = generated_subgroup(out.table, {x, idx(g.beta)});
    const std::size_t w_order = static_cast<std::size_t>(std::count(w.begin(), w.end(), true));
    // alpha' generates the quotient iff its powers meet every coset.
    std::vector<bool> covered(order, false);
    std::uint32_t a_pow = out.table.identity();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::uint32_t e = 0; e < order; ++e)
            if (w[e])
                covered[out.table.mul(a_pow, e)] = true;
        a_pow = out.table.mul(a_pow, idx(g.alpha));
    }
    out.quotient_cyclic = order == w_order * n && std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
    const std::uint32_t a = idx(g.alpha), b = idx(g.beta);
    const std::uint32_t comm = out.table.mul(out.table.mul(a, b), out.table.mul(out.table.inverse(a), out.table.inverse(b)));
    out.commutator_scalar = comm == idx(CycloMatrix::scalar(n, -1));
    return out;
}

}  // namespace bpu::pu
