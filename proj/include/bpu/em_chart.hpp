#pragma once

// Bounded-range model of H^*(K(Z,3); Z_p) as the free graded-commutative
// algebra on x1 (dim 3), a_k (dim 2p^k+1) and b_k = beta(a_k) (dim 2p^k+2),
// and the p-local integral groups read off from its Bockstein.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpu/fp_matrix.hpp"
#include "bpu/steenrod.hpp"
#include "bpu/zmodule.hpp"

namespace bpu::em {

struct EmGenerator {
    std::string label;  // "x1", "a1", "b1", ...
    unsigned k = 0;     // 0 for x1
    int dim = 0;
    bool exterior() const { return dim % 2 != 0; }
};

// Exponent of each generator, in generator order.
using Exponents = std::vector<std::uint32_t>;

class EmChart {
public:
    // Throws std::invalid_argument if max_dim < 3.
    EmChart(const steenrod::OddPrime& p, int max_dim);

    const steenrod::OddPrime& prime() const { return p_; }
    int max_dim() const { return max_dim_; }
    const std::vector<EmGenerator>& generators() const { return generators_; }

    // Monomials of dimension d, in a fixed order; empty outside [0, max_dim].
    const std::vector<Exponents>& basis(int d) const;
    std::size_t rank(int d) const { return basis(d).size(); }
    std::optional<std::size_t> index_of(int d, const Exponents& m) const;

    int dimension(const Exponents& m) const;
    // "1", "x1", "x1 a1", "b1^2".
    std::string label(const Exponents& m) const;
    // Inverse of label(); throws std::invalid_argument on unknown names.
    Exponents parse(const std::string& text) const;

    // beta(m) as (monomial, coefficient in F_p) pairs.
    std::vector<std::pair<Exponents, std::uint32_t>> bockstein(const Exponents& m) const;

private:
    steenrod::OddPrime p_;
    int max_dim_;
    std::vector<EmGenerator> generators_;
    std::vector<std::vector<Exponents>> basis_;
    std::vector<std::map<Exponents, std::size_t>> index_;
};

EmChart build_chart(const steenrod::OddPrime& p, int max_dim);

// Matrix of beta from dimension d to d+1: rows index basis(d+1), columns basis(d).
// Throws std::out_of_range unless 0 <= d < max_dim.
FpMatrix bockstein_d1(const EmChart& chart, int d);

struct IntegralChart {
    // Dimensions 0..max_dim-1.
    GradedAbGroup groups;
    std::vector<std::size_t> mod_p_rank;
    std::vector<std::size_t> homology_rank;  // of d1
    std::vector<std::size_t> torsion_rank;   // t_d = rank of d1 into dimension d
    std::vector<bool> certified;             // homology rank equals free rank
    bool collapse() const;
};

IntegralChart integral_reconstruct(const EmChart& chart);

struct ChartReport {
    std::uint32_t p = 0;
    int max_dim = 0;
    IntegralChart integral;
    // Expected groups for 0 < i <= 2p+4.
    std::map<int, FgAbGroup> expected;
    std::vector<int> mismatches;
    std::string class_at_2p2;  // label of the mod-p basis in dimension 2p+2
    bool pass = false;
};

ChartReport verify_lemma21(const steenrod::OddPrime& p);

struct YClassExpansion {
    steenrod::AdmissibleElement q;          // Q_{k+1} in the admissible basis
    steenrod::AdmissibleElement survivors;  // after the x1 filters
    std::size_t dropped_trailing_beta = 0;
    std::size_t dropped_excess = 0;
    steenrod::AdmissibleWord expected;  // b P^{p^k} ... P^1
    bool pass = false;                  // survivors == expected with coefficient 1
};

// beta P^{p^k} ... P^1.
steenrod::AdmissibleWord canonical_y_word(const steenrod::OddPrime& p, unsigned k);

// Q_{k+1} applied to x1: convert to admissible form, drop words ending in beta
// and words of excess > 3. Throws std::runtime_error("unhandled p-th power term")
// if an excess-3 word without a leading beta survives.
YClassExpansion y_class_filtered_expansion(const steenrod::OddPrime& p, unsigned k);

}  // namespace bpu::em
