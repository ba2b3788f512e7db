#pragma once

#include "ratlin/ratmat.hpp"

#include <vector>

namespace ratlin {

/// Rosenbrock polynomial system matrix: a polynomial matrix together with a
/// designated nonsingular state submatrix. The state block may sit anywhere;
/// rows and columns are selected by index lists. With state rows/columns
/// removed, the remaining blocks are B (state rows), -C (state columns) and
/// D; the represented rational matrix is the Schur complement D + C A^-1 B.
class SystemMatrix {
  public:
    SystemMatrix(PolyMatrix P, std::vector<std::size_t> state_rows, std::vector<std::size_t> state_cols);

    [[nodiscard]] const PolyMatrix& matrix() const { return P_; }
    [[nodiscard]] const std::vector<std::size_t>& state_rows() const { return state_rows_; }
    [[nodiscard]] const std::vector<std::size_t>& state_cols() const { return state_cols_; }
    [[nodiscard]] std::size_t state_dim() const { return state_rows_.size(); }
    [[nodiscard]] std::size_t output_dim() const { return P_.rows() - state_dim(); }  // q
    [[nodiscard]] std::size_t input_dim() const { return P_.cols() - state_dim(); }   // r

    [[nodiscard]] PolyMatrix state_matrix() const;   // A
    [[nodiscard]] PolyMatrix input_block() const;    // B
    [[nodiscard]] PolyMatrix output_block() const;   // C (sign-corrected)
    [[nodiscard]] PolyMatrix direct_block() const;   // D

    /// Rows of [A; C] up to row permutation: all rows, state columns.
    [[nodiscard]] PolyMatrix state_column_block() const;
    /// [A B] up to column permutation: state rows, all columns.
    [[nodiscard]] PolyMatrix state_row_block() const;

    /// Same partition applied to the d-reversal of the whole matrix.
    [[nodiscard]] SystemMatrix reversal_system() const;

    friend bool operator==(const SystemMatrix& a, const SystemMatrix& b) = default;

  private:
    PolyMatrix P_;
    std::vector<std::size_t> state_rows_, state_cols_;
    std::vector<std::size_t> other_rows_, other_cols_;
};

using Psm = SystemMatrix;

SystemMatrix make_psm(PolyMatrix P, std::vector<std::size_t> state_rows, std::vector<std::size_t> state_cols);

/// Schur complement of the state matrix: D + C A^-1 B (D itself when the state is empty).
RatMatrix transfer_function(const SystemMatrix& psm);

/// normal_rank(P) = n + normal_rank(transfer); holds identically, exposed as a check.
bool rank_relation_check(const SystemMatrix& psm);

bool is_minimal_at(const SystemMatrix& psm, const Rat& lambda0);

/// Where minimality fails: the rational points plus squarefree factors
/// covering the non-rational part of the defect locus.
struct DefectPoints {
    std::vector<Rat> points;
    std::vector<Poly> factors;  // monic squarefree, no rational roots

    [[nodiscard]] bool empty() const { return points.empty() && factors.empty(); }
};

DefectPoints minimality_defect_points(const SystemMatrix& psm);

bool is_minimal_in(const SystemMatrix& psm, const Region& region);
bool is_minimal_at_infinity(const SystemMatrix& psm);
bool is_strongly_minimal(const SystemMatrix& psm);

struct PsmStructureReport {
    std::vector<int> pole_eds;  // ascending multiplicities, from the state matrix
    std::vector<int> zero_eds;  // ascending multiplicities, from the whole matrix
    Rat point;
};

/// Local pole/zero structure of the transfer function read off the system
/// matrix; requires minimality at the point.
PsmStructureReport structure_at(const SystemMatrix& psm, const Rat& lambda0);

/// Invariant orders at infinity of the transfer function; requires minimality
/// at infinity.
InvariantOrders structure_at_infinity(const SystemMatrix& psm);

}  // namespace ratlin
