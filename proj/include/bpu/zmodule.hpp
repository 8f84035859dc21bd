#pragma once

// Exact integer linear algebra and finitely generated abelian groups.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

namespace bpu {

using Integer = mpz_class;

// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix diagonal(const std::vector<Integer>& diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Integer>& entries() const { return entries_; }
    std::vector<Integer> row(std::size_t i) const;

    IntMatrix transpose() const;
    // Stack other below this; column counts must agree.
    IntMatrix stacked(const IntMatrix& other) const;
    // Determinant of a square matrix (fraction-free elimination).
    Integer determinant() const;
    bool is_diagonal() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

    std::string to_string() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[dst] += c * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& c);
    // col[dst] += c * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& c);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;
};

// D = U * A * V with U, V unimodular and D diagonal with d_1 | d_2 | ... .
// v_inverse is V^{-1}, carried along so row spans can be rebuilt exactly.
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    IntMatrix v_inverse;

    std::size_t rank() const;
    std::vector<Integer> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// Finitely generated abelian group Z^r + Z_{d_1} + ... + Z_{d_k}, d_i >= 2, d_i | d_{i+1}.
class FgAbGroup {
public:
    FgAbGroup() = default;

    static FgAbGroup zero() { return {}; }
    static FgAbGroup free(std::size_t rank);
    // Z/m. m = 0 gives Z, m = 1 the zero group.
    static FgAbGroup cyclic(const Integer& m);
    // Canonicalizes an arbitrary direct sum of cyclic groups; orders of 0 are free summands.
    static FgAbGroup from_cyclic_orders(std::size_t free_rank, std::vector<Integer> orders);

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }

    bool is_zero() const { return free_rank_ == 0 && torsion_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }
    // Throws std::domain_error for infinite groups.
    Integer order() const;
    // Every cyclic summand in the canonical decomposition.
    std::vector<Integer> cyclic_orders() const;

    friend FgAbGroup operator+(const FgAbGroup& a, const FgAbGroup& b);
    friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) = default;

    // "0", "Z", "Z_3", "Z^2 + Z_2 + Z_4".
    std::string to_string() const;
    nlohmann::json to_json() const;
    static FgAbGroup from_json(const nlohmann::json& j);

private:
    std::size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
};

// Z^g / (row span of relations), g = relations.cols().
FgAbGroup cokernel_group(const IntMatrix& relations);

enum class Pairing { tensor, tor, hom, ext };

FgAbGroup pairing_functor(Pairing mode, const FgAbGroup& a, const FgAbGroup& b);

// Components for dims 0..max_dim; negative dims are implicitly zero.
class GradedAbGroup {
public:
    GradedAbGroup() = default;
    explicit GradedAbGroup(std::vector<FgAbGroup> components);

    int max_dim() const { return static_cast<int>(components_.size()) - 1; }
    // Zero for d < 0, throws std::out_of_range for d > max_dim.
    const FgAbGroup& at(int d) const;
    void set(int d, FgAbGroup g);
    const std::vector<FgAbGroup>& components() const { return components_; }

    friend bool operator==(const GradedAbGroup&, const GradedAbGroup&) = default;

private:
    std::vector<FgAbGroup> components_;
};

// H^*(B Z_m; Z) = Z, 0, Z_m, 0, Z_m, ... through max_dim.
GradedAbGroup cyclic_group_cohomology(const Integer& m, int max_dim);

// Cohomology Kunneth: sum_{i+j=n} G^i (x) H^j  +  sum_{i+j=n+1} Tor(G^i, H^j).
FgAbGroup kunneth_graded(const GradedAbGroup& g, const GradedAbGroup& h, int n);

// Sublattices of Z^g, generated by the rows of a matrix.
class Lattice {
public:
    explicit Lattice(IntMatrix generators);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return rank_; }
    // Rows form a Z-basis.
    const IntMatrix& basis() const { return basis_; }

    bool contains(const std::vector<Integer>& v) const;
    // Coordinates of v in basis(); throws std::invalid_argument if v is not in the lattice.
    std::vector<Integer> coordinates(const std::vector<Integer>& v) const;

private:
    std::size_t ambient_ = 0;
    std::size_t rank_ = 0;
    IntMatrix basis_;
    IntMatrix v_;  // column transform of the Smith decomposition
    std::vector<Integer> diag_;
};

// Rows form a basis of { x in Z^c : A x = 0 } for A of shape r x c.
IntMatrix kernel_basis(const IntMatrix& a);

// K / I for lattices I <= K <= Z^g given by generating rows.
FgAbGroup subquotient(const IntMatrix& numerator, const IntMatrix& denominator);

}  // namespace bpu
