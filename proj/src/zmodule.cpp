#include "bpu/zmodule.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace bpu {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0))
{
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries))
{
    if (entries_.size() != rows * cols)
        throw std::invalid_argument("IntMatrix: entry count does not match shape");
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows)
{
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<Integer> e;
    e.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c)
            throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
        for (long x : row)
            e.emplace_back(x);
    }
    return IntMatrix(r, c, std::move(e));
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& diag)
{
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const
{
    return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::stacked(const IntMatrix& other) const
{
    if (rows_ == 0)
        return other;
    if (other.rows_ == 0)
        return *this;
    if (cols_ != other.cols_)
        throw std::invalid_argument("IntMatrix::stacked: column mismatch");
    std::vector<Integer> e = entries_;
    e.insert(e.end(), other.entries_.begin(), other.entries_.end());
    return IntMatrix(rows_ + other.rows_, cols_, std::move(e));
}

Integer IntMatrix::determinant() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("IntMatrix::determinant: not square");
    std::size_t n = rows_;
    if (n == 0)
        return 1;
    // Bareiss fraction-free elimination.
    IntMatrix m = *this;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && m(s, k) == 0)
                ++s;
            if (s == n)
                return 0;
            m.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

bool IntMatrix::is_diagonal() const
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0)
                return false;
    return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("IntMatrix product: shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("IntMatrix sum: shape mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.entries_.size(); ++i)
        c.entries_[i] += b.entries_[i];
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("IntMatrix difference: shape mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.entries_.size(); ++i)
        c.entries_[i] -= b.entries_[i];
    return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::string IntMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& c)
{
    if (c == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0)
            (*this)(dst, j) += c * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& c)
{
    if (c == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0)
            (*this)(i, dst) += c * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, c) = -(*this)(i, c);
}

// ---------------------------------------------------------------------------
// Smith normal form

std::size_t SmithDecomposition::rank() const
{
    std::size_t r = 0;
    std::size_t n = std::min(d.rows(), d.cols());
    while (r < n && d(r, r) != 0)
        ++r;
    return r;
}

std::vector<Integer> SmithDecomposition::diagonal() const
{
    std::vector<Integer> out;
    std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(d(i, i));
    return out;
}

namespace {

int cmpabs(const Integer& a, const Integer& b)
{
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

// Row/column operations applied to the working matrix, mirrored into U, V and V^{-1}.
class SmithWorker {
public:
    explicit SmithWorker(const IntMatrix& a)
        : d_(a), u_(IntMatrix::identity(a.rows())), v_(IntMatrix::identity(a.cols())),
          vinv_(IntMatrix::identity(a.cols()))
    {
    }

    SmithDecomposition run()
    {
        std::size_t n = std::min(d_.rows(), d_.cols());
        for (std::size_t t = 0; t < n; ++t) {
            if (!move_smallest_to(t))
                break;
            reduce_pivot(t);
        }
        return {std::move(u_), std::move(d_), std::move(v_), std::move(vinv_)};
    }

private:
    void swap_rows(std::size_t a, std::size_t b)
    {
        d_.swap_rows(a, b);
        u_.swap_rows(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        d_.swap_cols(a, b);
        v_.swap_cols(a, b);
        vinv_.swap_rows(a, b);
    }
    void add_row(std::size_t dst, std::size_t src, const Integer& c)
    {
        d_.add_row_multiple(dst, src, c);
        u_.add_row_multiple(dst, src, c);
    }
    void add_col(std::size_t dst, std::size_t src, const Integer& c)
    {
        d_.add_col_multiple(dst, src, c);
        v_.add_col_multiple(dst, src, c);
        vinv_.add_row_multiple(src, dst, -c);
    }
    void negate_row(std::size_t r)
    {
        d_.negate_row(r);
        u_.negate_row(r);
    }

    // Smallest nonzero |entry| of the trailing block moves to (t, t). False if the block is zero.
    bool move_smallest_to(std::size_t t)
    {
        std::size_t bi = 0, bj = 0;
        bool found = false;
        Integer best;
        for (std::size_t i = t; i < d_.rows(); ++i)
            for (std::size_t j = t; j < d_.cols(); ++j) {
                const Integer& x = d_(i, j);
                if (x == 0)
                    continue;
                if (!found || cmpabs(x, best) < 0) {
                    best = x;
                    bi = i;
                    bj = j;
                    found = true;
                    if (abs(best) == 1)
                        goto done;
                }
            }
    done:
        if (!found)
            return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    // Nearest-integer quotient, so remainders are at most half the pivot.
    static Integer centered_quotient(const Integer& a, const Integer& b)
    {
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (cmpabs(Integer(2 * r), b) > 0)
            q += 1;
        return q;
    }

    // Each pass re-selects the smallest entry of the trailing block, which keeps entries bounded.
    void reduce_pivot(std::size_t t)
    {
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < d_.rows(); ++i) {
                if (d_(i, t) == 0)
                    continue;
                add_row(i, t, -centered_quotient(d_(i, t), d_(t, t)));
                clean = clean && d_(i, t) == 0;
            }
            for (std::size_t j = t + 1; j < d_.cols(); ++j) {
                if (d_(t, j) == 0)
                    continue;
                add_col(j, t, -centered_quotient(d_(t, j), d_(t, t)));
                clean = clean && d_(t, j) == 0;
            }
            if (clean) {
                // Row and column are clear; enforce divisibility of the trailing block.
                std::size_t bad_row = d_.rows();
                for (std::size_t i = t + 1; i < d_.rows() && bad_row == d_.rows(); ++i)
                    for (std::size_t j = t + 1; j < d_.cols(); ++j)
                        if (!mpz_divisible_p(d_(i, j).get_mpz_t(), d_(t, t).get_mpz_t())) {
                            bad_row = i;
                            break;
                        }
                if (bad_row == d_.rows())
                    break;
                add_row(t, bad_row, 1);
            }
            move_smallest_to(t);
        }
        if (d_(t, t) < 0)
            negate_row(t);
    }

    IntMatrix d_, u_, v_, vinv_;
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a)
{
    return SmithWorker(a).run();
}

// ---------------------------------------------------------------------------
// FgAbGroup

FgAbGroup FgAbGroup::free(std::size_t rank)
{
    FgAbGroup g;
    g.free_rank_ = rank;
    return g;
}

FgAbGroup FgAbGroup::cyclic(const Integer& m)
{
    return from_cyclic_orders(0, {m});
}

FgAbGroup FgAbGroup::from_cyclic_orders(std::size_t free_rank, std::vector<Integer> orders)
{
    FgAbGroup g;
    g.free_rank_ = free_rank;
    std::vector<Integer> finite;
    for (auto& m : orders) {
        Integer a = abs(m);
        if (a == 0)
            ++g.free_rank_;
        else if (a != 1)
            finite.push_back(std::move(a));
    }
    // Pairwise (gcd, lcm) sweep: afterwards finite[i] | finite[j] for i < j.
    for (std::size_t i = 0; i < finite.size(); ++i)
        for (std::size_t j = i + 1; j < finite.size(); ++j) {
            Integer gcd_v, lcm_v;
            mpz_gcd(gcd_v.get_mpz_t(), finite[i].get_mpz_t(), finite[j].get_mpz_t());
            mpz_lcm(lcm_v.get_mpz_t(), finite[i].get_mpz_t(), finite[j].get_mpz_t());
            finite[i] = gcd_v;
            finite[j] = lcm_v;
        }
    for (auto& m : finite)
        if (m != 1)
            g.torsion_.push_back(std::move(m));
    return g;
}

Integer FgAbGroup::order() const
{
    if (free_rank_ != 0)
        throw std::domain_error("FgAbGroup::order: group is infinite");
    Integer n = 1;
    for (const auto& d : torsion_)
        n *= d;
    return n;
}

std::vector<Integer> FgAbGroup::cyclic_orders() const
{
    std::vector<Integer> out(free_rank_, Integer(0));
    out.insert(out.end(), torsion_.begin(), torsion_.end());
    return out;
}

FgAbGroup operator+(const FgAbGroup& a, const FgAbGroup& b)
{
    std::vector<Integer> orders = a.torsion_;
    orders.insert(orders.end(), b.torsion_.begin(), b.torsion_.end());
    return FgAbGroup::from_cyclic_orders(a.free_rank_ + b.free_rank_, std::move(orders));
}

std::string FgAbGroup::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ > 0) {
        os << 'Z';
        if (free_rank_ > 1)
            os << '^' << free_rank_;
        first = false;
    }
    for (const auto& d : torsion_) {
        os << (first ? "" : " + ") << "Z_" << d;
        first = false;
    }
    return os.str();
}

namespace {

nlohmann::json integer_to_json(const Integer& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

Integer integer_from_json(const nlohmann::json& j)
{
    if (j.is_string())
        return Integer(j.get<std::string>());
    return Integer(j.get<long>());
}

}  // namespace

nlohmann::json FgAbGroup::to_json() const
{
    nlohmann::json t = nlohmann::json::array();
    for (const auto& d : torsion_)
        t.push_back(integer_to_json(d));
    return {{"free_rank", free_rank_}, {"torsion", t}};
}

FgAbGroup FgAbGroup::from_json(const nlohmann::json& j)
{
    std::vector<Integer> orders;
    for (const auto& d : j.at("torsion"))
        orders.push_back(integer_from_json(d));
    return from_cyclic_orders(j.at("free_rank").get<std::size_t>(), std::move(orders));
}

FgAbGroup cokernel_group(const IntMatrix& relations)
{
    std::size_t g = relations.cols();
    if (relations.rows() == 0)
        return FgAbGroup::free(g);
    SmithDecomposition s = smith_normal_form(relations);
    std::size_t r = s.rank();
    std::vector<Integer> orders;
    for (std::size_t i = 0; i < r; ++i)
        orders.push_back(s.d(i, i));
    return FgAbGroup::from_cyclic_orders(g - r, std::move(orders));
}

// ---------------------------------------------------------------------------
// Bifunctors. Both arguments are split into cyclic summands Z or Z_d and the
// functor is evaluated summand by summand.

namespace {

Integer gcd_of(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Value of the functor on a pair of cyclic groups (0 encodes Z).
std::vector<Integer> cyclic_pairing(Pairing mode, const Integer& a, const Integer& b)
{
    bool a_free = a == 0;
    bool b_free = b == 0;
    switch (mode) {
    case Pairing::tensor:
        if (a_free && b_free)
            return {Integer(0)};
        if (a_free)
            return {b};
        if (b_free)
            return {a};
        return {gcd_of(a, b)};
    case Pairing::tor:
        if (a_free || b_free)
            return {};
        return {gcd_of(a, b)};
    case Pairing::hom:
        if (a_free)
            return {b};
        if (b_free)
            return {};
        return {gcd_of(a, b)};
    case Pairing::ext:
        if (a_free)
            return {};
        if (b_free)
            return {a};
        return {gcd_of(a, b)};
    }
    return {};
}

}  // namespace

FgAbGroup pairing_functor(Pairing mode, const FgAbGroup& a, const FgAbGroup& b)
{
    std::vector<Integer> orders;
    for (const auto& x : a.cyclic_orders())
        for (const auto& y : b.cyclic_orders())
            for (auto& z : cyclic_pairing(mode, x, y))
                orders.push_back(std::move(z));
    return FgAbGroup::from_cyclic_orders(0, std::move(orders));
}

// ---------------------------------------------------------------------------
// Graded groups

GradedAbGroup::GradedAbGroup(std::vector<FgAbGroup> components) : components_(std::move(components)) {}

const FgAbGroup& GradedAbGroup::at(int d) const
{
    static const FgAbGroup zero_group;
    if (d < 0)
        return zero_group;
    if (d > max_dim())
        throw std::out_of_range("GradedAbGroup::at: dimension " + std::to_string(d) + " beyond max_dim "
                                + std::to_string(max_dim()));
    return components_[static_cast<std::size_t>(d)];
}

void GradedAbGroup::set(int d, FgAbGroup g)
{
    if (d < 0)
        throw std::out_of_range("GradedAbGroup::set: negative dimension");
    if (d > max_dim())
        components_.resize(static_cast<std::size_t>(d) + 1);
    components_[static_cast<std::size_t>(d)] = std::move(g);
}

GradedAbGroup cyclic_group_cohomology(const Integer& m, int max_dim)
{
    std::vector<FgAbGroup> c;
    for (int d = 0; d <= max_dim; ++d) {
        if (d == 0)
            c.push_back(FgAbGroup::free(1));
        else if (d % 2 == 0)
            c.push_back(FgAbGroup::cyclic(m));
        else
            c.push_back(FgAbGroup::zero());
    }
    return GradedAbGroup(std::move(c));
}

FgAbGroup kunneth_graded(const GradedAbGroup& g, const GradedAbGroup& h, int n)
{
    if (n < 0 || n > std::min(g.max_dim(), h.max_dim()))
        throw std::out_of_range("kunneth_graded: dimension " + std::to_string(n) + " out of range");
    FgAbGroup out;
    for (int i = 0; i <= n; ++i)
        out = out + pairing_functor(Pairing::tensor, g.at(i), h.at(n - i));
    // Tor terms with i + j = n + 1. Pairings of a torsion-free H^0 with H^{n+1}
    // vanish, so H^{n+1} is only needed when H^0 has torsion.
    for (int i = 0; i <= n + 1; ++i) {
        int j = n + 1 - i;
        if (i > g.max_dim() || j > h.max_dim()) {
            const FgAbGroup& low = i > g.max_dim() ? h.at(j) : g.at(i);
            if (!low.torsion().empty())
                throw std::out_of_range("kunneth_graded: Tor term needs dimension " + std::to_string(n + 1));
            continue;
        }
        out = out + pairing_functor(Pairing::tor, g.at(i), h.at(j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lattices

Lattice::Lattice(IntMatrix generators) : ambient_(generators.cols())
{
    if (generators.rows() == 0) {
        basis_ = IntMatrix(0, ambient_);
        v_ = IntMatrix::identity(ambient_);
        return;
    }
    SmithDecomposition s = smith_normal_form(generators);
    rank_ = s.rank();
    // Row span of A equals the row span of D * V^{-1}.
    basis_ = IntMatrix(rank_, ambient_);
    for (std::size_t i = 0; i < rank_; ++i) {
        diag_.push_back(s.d(i, i));
        for (std::size_t j = 0; j < ambient_; ++j)
            basis_(i, j) = s.d(i, i) * s.v_inverse(i, j);
    }
    v_ = std::move(s.v);
}

namespace {

std::vector<Integer> row_times(const std::vector<Integer>& v, const IntMatrix& m)
{
    std::vector<Integer> out(m.cols(), Integer(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] += v[i] * m(i, j);
    }
    return out;
}

}  // namespace

bool Lattice::contains(const std::vector<Integer>& v) const
{
    if (v.size() != ambient_)
        throw std::invalid_argument("Lattice::contains: dimension mismatch");
    std::vector<Integer> w = row_times(v, v_);
    for (std::size_t i = 0; i < ambient_; ++i) {
        if (i < rank_) {
            if (!mpz_divisible_p(w[i].get_mpz_t(), diag_[i].get_mpz_t()))
                return false;
        }
        else if (w[i] != 0) {
            return false;
        }
    }
    return true;
}

std::vector<Integer> Lattice::coordinates(const std::vector<Integer>& v) const
{
    if (!contains(v))
        throw std::invalid_argument("Lattice::coordinates: vector not in lattice");
    // basis row i = d_i * (V^{-1})_i, so v V = sum_i c_i d_i e_i.
    std::vector<Integer> w = row_times(v, v_);
    std::vector<Integer> c(rank_);
    for (std::size_t i = 0; i < rank_; ++i)
        mpz_divexact(c[i].get_mpz_t(), w[i].get_mpz_t(), diag_[i].get_mpz_t());
    return c;
}

IntMatrix kernel_basis(const IntMatrix& a)
{
    std::size_t c = a.cols();
    if (a.rows() == 0)
        return IntMatrix::identity(c);
    SmithDecomposition s = smith_normal_form(a);
    std::size_t r = s.rank();
    // A x = 0 iff D (V^{-1} x) = 0: the last c - r columns of V span the kernel.
    IntMatrix k(c - r, c);
    for (std::size_t i = r; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            k(i - r, j) = s.v(j, i);
    return k;
}

FgAbGroup subquotient(const IntMatrix& numerator, const IntMatrix& denominator)
{
    Lattice big(numerator);
    if (big.rank() == 0)
        return FgAbGroup::zero();
    IntMatrix rel(denominator.rows(), big.rank());
    for (std::size_t i = 0; i < denominator.rows(); ++i) {
        std::vector<Integer> c = big.coordinates(denominator.row(i));
        for (std::size_t j = 0; j < c.size(); ++j)
            rel(i, j) = c[j];
    }
    return cokernel_group(rel);
}

}  // namespace bpu
