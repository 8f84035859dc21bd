#pragma once

// Cohomology of cyclic groups with twisted coefficients, the low corner of the
// LHS spectral sequence for V'_n, and related bookkeeping.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bpu/zmodule.hpp"

namespace bpu::groupcoh {

// M = Z^g / (row span of relations) with C_n acting through A on column vectors.
class TwistedCyclicModule {
public:
    // Throws std::invalid_argument unless A preserves the relation lattice and
    // A^n acts as the identity on M.
    TwistedCyclicModule(std::size_t n, IntMatrix relations, IntMatrix action);

    // Z_m^g with the given action.
    static TwistedCyclicModule on_cyclic_power(std::size_t n, const Integer& m, IntMatrix action);
    // Z with the trivial action.
    static TwistedCyclicModule trivial_integers(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t generators() const { return action_.rows(); }
    const IntMatrix& relations() const { return relations_; }
    const IntMatrix& action() const { return action_; }
    FgAbGroup group() const { return cokernel_group(relations_); }

private:
    std::size_t n_;
    IntMatrix relations_;
    IntMatrix action_;
};

// H^s(C_n; M) via the periodic resolution. Throws std::invalid_argument for s < 0.
FgAbGroup cyclic_cohomology(const TwistedCyclicModule& m, int s);
FgAbGroup invariants(const TwistedCyclicModule& m);
FgAbGroup coinvariants(const TwistedCyclicModule& m);

// [[1,-1],[0,1]] and its contragredient [[1,0],[1,1]].
IntMatrix phi_matrix();
IntMatrix phi_contragredient();

struct LhsCornerReport {
    std::size_t n = 0;
    // E_2^{s,t} for s + t <= 3, with the phi action on H^2.
    std::map<std::pair<int, int>, FgAbGroup> e2;
    FgAbGroup e02_phi;
    FgAbGroup e02_contragredient;
    // 0 -> E^{2,0} -> H^2(BV'_n) -> E^{0,2} -> 0.
    Integer ses_sub;
    Integer ses_total;
    Integer ses_quotient;
    FgAbGroup e30;  // H^3(C_n; Z) = 0
    bool pass = false;
};

// Throws std::invalid_argument if n < 2.
LhsCornerReport lhs_corner_Vprime(std::size_t n);

// H^d(B(Z_n x Z_n); Z) by Kunneth; throws std::out_of_range unless 0 <= d <= 4.
FgAbGroup bv_cohomology(std::size_t n, int d);

// Abelianization of the enumerated V'_n, which is H^2(BV'_n; Z) up to isomorphism.
// Throws std::length_error when the group exceeds max_order.
FgAbGroup h2_Vprime_via_abelianization(std::size_t n, std::size_t max_order = 64);

// H^s(X; A) from integral homology by universal coefficients.
FgAbGroup uct_cohomology(const std::vector<FgAbGroup>& homology, const FgAbGroup& coeffs, int s);

struct Lemma34Report {
    std::size_t n = 0;
    std::vector<FgAbGroup> k_homology;    // H_s(K(Z_n,2); Z), s <= 3
    std::vector<FgAbGroup> k_cohomology;  // H^s(K(Z_n,2); Z), s <= 3
    FgAbGroup e11;                        // H^1(K; H^1(BV'_n))
    FgAbGroup e20;                        // H^2(K; Z)
    FgAbGroup e21;                        // H^2(K; H^1(BV'_n)), target of d_2 from (0,2)
    Integer e_inf02_order;                // |H^2(BV_n)| once E^{1,1}, E^{2,0} vanish
    Integer e02_order;                    // |H^2(BV'_n)|
    bool d3_zero = false;
    bool d2_source_zero = false;
    FgAbGroup e_inf30;
    Integer h3_bv_order;
    bool pass = false;
};

Lemma34Report lemma34_bookkeeping(std::size_t n);

}  // namespace bpu::groupcoh
