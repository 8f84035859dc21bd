#include "bpu/group_cohomology.hpp"

#include <stdexcept>

#include "bpu/finite_group.hpp"
#include "bpu/pu_matrices.hpp"

namespace bpu::groupcoh {

namespace {

Integer to_integer(std::size_t v)
{
    return Integer(static_cast<unsigned long>(v));
}

// Rows: the columns of f, i.e. the images f(e_i).
IntMatrix images(const IntMatrix& f)
{
    return f.transpose();
}

// Rows generating { x : f x in L } for L the row span of relations.
IntMatrix preimage(const IntMatrix& f, const IntMatrix& relations)
{
    const std::size_t g = f.cols();
    const std::size_t r = relations.rows();
    // f x - sum c_i l_i = 0 in unknowns (x, c).
    IntMatrix system(f.rows(), g + r);
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t j = 0; j < g; ++j)
            system(i, j) = f(i, j);
        for (std::size_t k = 0; k < r; ++k)
            system(i, g + k) = -relations(k, i);
    }
    IntMatrix k = kernel_basis(system);
    IntMatrix out(k.rows(), g);
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < g; ++j)
            out(i, j) = k(i, j);
    return out.stacked(relations);
}

IntMatrix norm(const IntMatrix& a, std::size_t n)
{
    IntMatrix sum(a.rows(), a.cols()), power = IntMatrix::identity(a.rows());
    for (std::size_t i = 0; i < n; ++i) {
        sum = sum + power;
        power = power * a;
    }
    return sum;
}

bool in_lattice(const Lattice& l, const IntMatrix& rows)
{
    for (std::size_t i = 0; i < rows.rows(); ++i)
        if (!l.contains(rows.row(i)))
            return false;
    return true;
}

}  // namespace

TwistedCyclicModule::TwistedCyclicModule(std::size_t n, IntMatrix relations, IntMatrix action)
    : n_(n), relations_(std::move(relations)), action_(std::move(action))
{
    const std::size_t g = action_.rows();
    if (n_ == 0)
        throw std::invalid_argument("TwistedCyclicModule: group order must be positive");
    if (action_.cols() != g || relations_.cols() != g)
        throw std::invalid_argument("TwistedCyclicModule: shape mismatch");
    const Lattice l(relations_);
    // A(L) <= L: the images A l as rows are l A^T.
    if (!in_lattice(l, relations_ * action_.transpose()))
        throw std::invalid_argument("TwistedCyclicModule: action does not preserve the relations");
    IntMatrix an = IntMatrix::identity(g);
    for (std::size_t i = 0; i < n_; ++i)
        an = an * action_;
    if (!in_lattice(l, images(an - IntMatrix::identity(g))))
        throw std::invalid_argument("TwistedCyclicModule: A^n is not the identity on M");
}

TwistedCyclicModule TwistedCyclicModule::on_cyclic_power(std::size_t n, const Integer& m, IntMatrix action)
{
    const std::size_t g = action.rows();
    return TwistedCyclicModule(n, IntMatrix::diagonal(std::vector<Integer>(g, m)), std::move(action));
}

TwistedCyclicModule TwistedCyclicModule::trivial_integers(std::size_t n)
{
    return TwistedCyclicModule(n, IntMatrix(0, 1), IntMatrix::identity(1));
}

FgAbGroup cyclic_cohomology(const TwistedCyclicModule& m, int s)
{
    if (s < 0)
        throw std::invalid_argument("cyclic_cohomology: negative degree");
    const IntMatrix& a = m.action();
    const IntMatrix& l = m.relations();
    const IntMatrix a_minus_1 = a - IntMatrix::identity(a.rows());
    const IntMatrix nm = norm(a, m.n());
    if (s == 0)
        return subquotient(preimage(a_minus_1, l), l);
    if (s % 2)
        return subquotient(preimage(nm, l), images(a_minus_1).stacked(l));
    return subquotient(preimage(a_minus_1, l), images(nm).stacked(l));
}

FgAbGroup invariants(const TwistedCyclicModule& m)
{
    return cyclic_cohomology(m, 0);
}

FgAbGroup coinvariants(const TwistedCyclicModule& m)
{
    const IntMatrix a_minus_1 = m.action() - IntMatrix::identity(m.generators());
    return cokernel_group(images(a_minus_1).stacked(m.relations()));
}

IntMatrix phi_matrix()
{
    return IntMatrix::from_rows({{1, -1}, {0, 1}});
}

IntMatrix phi_contragredient()
{
    return IntMatrix::from_rows({{1, 0}, {1, 1}});
}

LhsCornerReport lhs_corner_Vprime(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("lhs_corner_Vprime: n must be at least 2");
    const Integer nn = to_integer(n);
    LhsCornerReport r;
    r.n = n;
    const auto h2_phi = TwistedCyclicModule::on_cyclic_power(n, nn, phi_matrix());
    const auto h2_dual = TwistedCyclicModule::on_cyclic_power(n, nn, phi_contragredient());
    // H^3(B(Z_n x Z_n)) = Z_n, acted on by det(phi) = 1.
    const auto h3 = TwistedCyclicModule::on_cyclic_power(n, nn, IntMatrix::identity(1));
    const auto h0 = TwistedCyclicModule::trivial_integers(n);
    for (int s = 0; s <= 3; ++s)
        for (int t = 0; t + s <= 3; ++t) {
            FgAbGroup e;
            if (t == 0)
                e = cyclic_cohomology(h0, s);
            else if (t == 2)
                e = cyclic_cohomology(h2_phi, s);
            else if (t == 3)
                e = cyclic_cohomology(h3, s);
            r.e2[{s, t}] = e;
        }
    r.e02_phi = r.e2.at({0, 2});
    r.e02_contragredient = invariants(h2_dual);
    r.e30 = r.e2.at({3, 0});
    const FgAbGroup& e20 = r.e2.at({2, 0});
    const FgAbGroup& e11 = r.e2.at({1, 1});
    r.ses_sub = e20.is_finite() ? e20.order() : Integer(0);
    r.ses_quotient = r.e02_phi.is_finite() ? r.e02_phi.order() : Integer(0);
    r.ses_total = r.ses_sub * r.ses_quotient;
    const FgAbGroup zn = FgAbGroup::cyclic(nn);
    r.pass = e20 == zn && e11.is_zero() && r.e02_phi == zn && r.e02_contragredient == zn &&
             r.ses_total == nn * nn;
    return r;
}

FgAbGroup bv_cohomology(std::size_t n, int d)
{
    if (d < 0 || d > 4)
        throw std::out_of_range("bv_cohomology: degree must lie in 0..4");
    const GradedAbGroup h = cyclic_group_cohomology(to_integer(n), d + 1);
    return kunneth_graded(h, h, d);
}

FgAbGroup h2_Vprime_via_abelianization(std::size_t n, std::size_t max_order)
{
    const pu::VprimeGroup g = pu::enumerate_group(n, max_order);
    // Hom(A, Q/Z) is isomorphic to A for finite abelian A.
    return abelianization(g.table);
}

FgAbGroup uct_cohomology(const std::vector<FgAbGroup>& homology, const FgAbGroup& coeffs, int s)
{
    if (s < 0)
        return FgAbGroup::zero();
    if (static_cast<std::size_t>(s) >= homology.size())
        throw std::out_of_range("uct_cohomology: homology not known in that degree");
    FgAbGroup out = pairing_functor(Pairing::hom, homology[static_cast<std::size_t>(s)], coeffs);
    if (s > 0)
        out = out + pairing_functor(Pairing::ext, homology[static_cast<std::size_t>(s) - 1], coeffs);
    return out;
}

Lemma34Report lemma34_bookkeeping(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("lemma34_bookkeeping: n must be at least 2");
    const Integer nn = to_integer(n);
    const FgAbGroup zn = FgAbGroup::cyclic(nn);
    Lemma34Report r;
    r.n = n;
    r.k_homology = {FgAbGroup::free(1), FgAbGroup::zero(), zn, FgAbGroup::zero()};
    for (int s = 0; s <= 3; ++s)
        r.k_cohomology.push_back(uct_cohomology(r.k_homology, FgAbGroup::free(1), s));
    // H^1(BV'_n; Z) = Hom(V'_n, Z) = 0 for a finite group.
    const FgAbGroup h1_vprime = FgAbGroup::zero();
    r.e11 = uct_cohomology(r.k_homology, h1_vprime, 1);
    r.e20 = r.k_cohomology[2];
    r.e21 = uct_cohomology(r.k_homology, h1_vprime, 2);
    const FgAbGroup h2_bv = bv_cohomology(n, 2);
    r.e_inf02_order = (r.e11.is_zero() && r.e20.is_zero()) ? h2_bv.order() : Integer(0);
    r.e02_order = lhs_corner_Vprime(n).ses_total;
    r.d3_zero = r.e_inf02_order != 0 && r.e_inf02_order == r.e02_order;
    r.d2_source_zero = r.e11.is_zero();
    r.e_inf30 = (r.d3_zero && r.d2_source_zero) ? r.k_cohomology[3] : FgAbGroup::zero();
    r.h3_bv_order = bv_cohomology(n, 3).order();
    r.pass = r.k_cohomology[0] == FgAbGroup::free(1) && r.k_cohomology[1].is_zero() && r.k_cohomology[2].is_zero() &&
             r.k_cohomology[3] == zn && r.e21.is_zero() && r.d3_zero && r.d2_source_zero && r.e_inf30 == zn &&
             r.h3_bv_order == nn;
    return r;
}

}  // namespace bpu::groupcoh
