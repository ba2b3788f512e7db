#pragma once

#include "ratlin/ratfun.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace ratlin {

class RatMatrix;

/// Rectangular grid of polynomials, row-major.
class PolyMatrix {
  public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries);

    static PolyMatrix identity(std::size_t n);
    static PolyMatrix constant(const std::vector<std::vector<Rat>>& grid);
    static PolyMatrix from_rows(const std::vector<std::vector<Poly>>& rows);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] const Poly& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    Poly& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    [[nodiscard]] bool is_zero() const;
    /// Max entry degree; empty for the zero matrix.
    [[nodiscard]] std::optional<int> degree() const;
    [[nodiscard]] bool is_pencil() const;  // degree <= 1 (zero matrix counts)

    /// Coefficient of l^k, as a constant matrix.
    [[nodiscard]] std::vector<std::vector<Rat>> coefficient(int k) const;
    [[nodiscard]] std::vector<std::vector<Rat>> eval(const Rat& x) const;

    [[nodiscard]] PolyMatrix submatrix(const std::vector<std::size_t>& keep_rows,
                                       const std::vector<std::size_t>& keep_cols) const;
    [[nodiscard]] PolyMatrix transpose() const;

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const Poly& s, const PolyMatrix& m);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Poly> e_;
};

/// Degree-at-most-one polynomial matrix.
using Pencil = PolyMatrix;

/// Invariant polynomials d_1 | d_2 | ... | d_r, all monic.
struct SmithForm {
    std::size_t rows = 0, cols = 0;
    std::vector<Poly> invariants;

    [[nodiscard]] std::size_t rank() const { return invariants.size(); }
    friend bool operator==(const SmithForm& a, const SmithForm& b) = default;
};

/// Multiplicity lists across invariant polynomials, keyed by coprime factors.
struct ElementaryDivisors {
    std::vector<std::pair<Poly, std::vector<int>>> by_factor;  // ascending multiplicities

    /// Multiplicities of (l - a), ascending; empty if a is not a zero.
    [[nodiscard]] std::vector<int> at(const Rat& a) const;
};

/// Smith normal form by exact gcd-pivot elimination over Q[l].
SmithForm smith_form(const PolyMatrix& P);
/// Independent oracle: d_i = Delta_i / Delta_{i-1} with Delta_i the monic gcd
/// of all i x i minors (determinantal divisors).
SmithForm smith_via_minors(const PolyMatrix& P);

/// Multiplicities of (l - a) across the invariant polynomials, ascending, zeros omitted.
std::vector<int> local_elementary_divisors(const PolyMatrix& P, const Rat& a);
ElementaryDivisors elementary_divisors(const PolyMatrix& P);

std::size_t normal_rank(const PolyMatrix& P);
std::size_t rank_at(const PolyMatrix& P, const Rat& a);
std::size_t rank_of_constant(std::vector<std::vector<Rat>> m);

/// Exact determinant (square input) via fraction-free elimination.
Poly determinant(const PolyMatrix& P);

bool is_unimodular(const PolyMatrix& P);

/// Forney: full row rank at every finite point (Smith form [I 0]) and full
/// row rank of the highest row degree coefficient matrix. Requires rows < cols.
bool is_minimal_basis(const PolyMatrix& K);

/// Highest row degree coefficient matrix (zero rows yield zero rows).
std::vector<std::vector<Rat>> highest_row_degree_matrix(const PolyMatrix& K);

/// l^g * P(1/l): polynomial when g >= deg(P), otherwise rational.
std::variant<PolyMatrix, RatMatrix> reversal(const PolyMatrix& P, int g);
/// Variant that requires g >= deg(P).
PolyMatrix reversal_poly(const PolyMatrix& P, int g);

}  // namespace ratlin
