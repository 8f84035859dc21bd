#pragma once

// Exact model of the matrices alpha', beta' in U_n over Z[x]/(x^n - 1), where x
// stands for exp(2 pi i / n).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bpu/finite_group.hpp"
#include "bpu/zmodule.hpp"

namespace bpu::pu {

// Element of Z[x]/(x^n - 1). Only nonzero coefficients are stored.
class CycloElt {
public:
    CycloElt() = default;
    explicit CycloElt(std::size_t n);
    CycloElt(std::size_t n, std::vector<Integer> coeffs);

    // c x^k with k reduced mod n (negative k allowed).
    static CycloElt monomial(std::size_t n, long long k, const Integer& c = 1);

    std::size_t modulus() const { return n_; }
    // All n coefficients.
    std::vector<Integer> coeffs() const;
    // Nonzero (exponent, coefficient) pairs, exponents ascending.
    const std::vector<std::pair<std::size_t, Integer>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // (k, c) if the element is c x^k with c != 0.
    std::optional<std::pair<std::size_t, Integer>> as_monomial() const;

    // Multiply by x^k.
    CycloElt shifted(long long k) const;
    CycloElt& operator+=(const CycloElt& o);
    // this += a * b
    void add_product(const CycloElt& a, const CycloElt& b);

    friend CycloElt operator+(const CycloElt& a, const CycloElt& b);
    friend CycloElt operator-(const CycloElt& a, const CycloElt& b);
    friend CycloElt operator*(const CycloElt& a, const CycloElt& b);
    friend bool operator==(const CycloElt& a, const CycloElt& b) = default;

    // "0", "1", "x^2", "-x + 3".
    std::string to_string() const;

private:
    void normalize();

    std::size_t n_ = 0;
    std::vector<std::pair<std::size_t, Integer>> terms_;
};

// Square matrix over Z[x]/(x^n - 1); the size and the modulus are both n.
class CycloMatrix {
public:
    CycloMatrix() = default;
    explicit CycloMatrix(std::size_t n);

    static CycloMatrix identity(std::size_t n);
    // x^k times the identity.
    static CycloMatrix scalar(std::size_t n, long long k);

    std::size_t size() const { return n_; }
    CycloElt& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const CycloElt& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    CycloMatrix pow(std::uint64_t e) const;
    // x^k times this matrix.
    CycloMatrix shifted(long long k) const;
    // Every entry zero or a single monomial.
    bool entries_monomial() const;
    // Exactly one nonzero entry per row and column, each a monomial.
    bool is_monomial_matrix() const;
    // Determinant of a monomial matrix; nullopt otherwise.
    std::optional<CycloElt> monomial_determinant() const;

    // Skips zero entries of the left factor.
    friend CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b);
    friend bool operator==(const CycloMatrix& a, const CycloMatrix& b) = default;

    std::string to_string() const;

private:
    std::size_t n_ = 0;
    std::vector<CycloElt> entries_;
};

struct Generators {
    CycloMatrix alpha;  // cyclic permutation: e_i -> e_{i+1}
    CycloMatrix beta;   // diag(x, x^2, ..., x^{n-1}, 1)
};

// Throws std::invalid_argument if n < 2.
Generators build_generators(std::size_t n);

struct RelationsReport {
    std::size_t n = 0;
    bool commutation = false;     // beta alpha = x alpha beta
    bool alpha_order = false;     // alpha^n = I
    bool beta_order = false;      // beta^n = I
    bool conjugation = false;     // alpha (x^i beta^j) alpha^{-1} = x^{i-j} beta^j for all i, j
    bool monomial_closed = false;  // every product formed stayed monomial
    std::vector<std::string> failures;
    bool pass() const { return commutation && alpha_order && beta_order && conjugation && monomial_closed; }
};

RelationsReport verify_relations(std::size_t n);

// (i, j) with m = x^i beta^j, if m lies in W_n.
std::optional<std::pair<std::size_t, std::size_t>> w_coordinates(const CycloMatrix& m, const Generators& g);

struct PhiAction {
    std::size_t n = 0;
    // Columns are the coordinates of the conjugates of x I and beta; entries in [0, n).
    IntMatrix matrix;
    bool matches_expected = false;  // congruent to [[1,-1],[0,1]] mod n
};

// Throws std::logic_error if a conjugate leaves W_n.
PhiAction extract_phi_action(std::size_t n);

struct VprimeGroup {
    std::size_t n = 0;
    MultiplicationTable table;
    std::vector<CycloMatrix> elements;  // elements[i] has label table.labels()[i]
    bool order_ok = false;              // |V'_n| = n^3
    bool center_has_scalar = false;     // x I is central
    bool quotient_cyclic = false;       // V'_n / <x I, beta'> is cyclic of order n, generated by alpha'
    bool commutator_scalar = false;     // alpha beta alpha^{-1} beta^{-1} = x^{-1} I
    bool pass() const { return order_ok && center_has_scalar && quotient_cyclic && commutator_scalar; }
};

inline constexpr std::size_t kDefaultGroupCap = 64;

// Closure of {alpha', beta'}; elements sorted by (k, j, i) for x^i beta^j alpha^k.
// Throws std::length_error("group enumeration cap exceeded") past max_order elements.
VprimeGroup enumerate_group(std::size_t n, std::size_t max_order = kDefaultGroupCap);

}  // namespace bpu::pu
