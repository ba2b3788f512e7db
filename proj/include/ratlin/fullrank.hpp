#pragma once

#include "ratlin/linearize.hpp"

#include <optional>

namespace ratlin {

/// Pencil [[M, K2^T], [K1, 0]] with K1, K2 of full row normal rank; either
/// side block may be absent.
class BlockFullRank {
  public:
    BlockFullRank(Pencil M, std::optional<Pencil> K1, std::optional<Pencil> K2);

    [[nodiscard]] const Pencil& middle() const { return M_; }
    [[nodiscard]] const std::optional<Pencil>& k1() const { return K1_; }
    [[nodiscard]] const std::optional<Pencil>& k2() const { return K2_; }
    [[nodiscard]] const Pencil& assembled() const { return L_; }

  private:
    Pencil M_;
    std::optional<Pencil> K1_, K2_;
    Pencil L_;
};

struct DualBasisPair {
    RatMatrix basis;       // K, full row normal rank
    RatMatrix dual_basis;  // N, full row normal rank, K N^T = 0, rows(K)+rows(N) = cols
};

bool check_duality(const DualBasisPair& pair);

/// A full-row-normal-rank rational matrix factors uniquely as a regular
/// rational matrix times a minimal basis of its row space; pencils factor into
/// pencils.
struct MinimalBasisFactorization {
    RatMatrix regular_part;   // S, regular
    PolyMatrix minimal_part;  // T, minimal basis
};

MinimalBasisFactorization minimal_basis_factor(const RatMatrix& R);

/// Minimal basis of the row space of a full-row-normal-rank rational matrix.
PolyMatrix row_space_minimal_basis(const RatMatrix& R);

/// Largest region of the shape except:{...} where the matrix is defined with
/// full row rank; the excluded factors carry non-rational exclusion loci.
Region full_row_rank_region(const RatMatrix& R);

bool full_row_rank_at(const RatMatrix& R, const Rat& x);
/// Full row rank at 0 of the t-reversal, i.e. full row rank "at infinity of grade t".
bool reversed_full_row_rank_at_zero(const RatMatrix& R, int t);

/// G = N2 M N1^T; duality of the supplied bases is verified first. Absent side
/// blocks take identity bases.
RatMatrix associated_rational(const BlockFullRank& bfr, const RatMatrix& N1, const RatMatrix& N2);

struct CertifiedRegion {
    RatMatrix target;
    Region region;
};

/// The associated rational matrix plus the region (intersection of the
/// full-row-rank regions of all present blocks and bases) where the assembled
/// pencil is certified as an empty-state linearization of it.
CertifiedRegion linearization_region(const BlockFullRank& bfr, const RatMatrix& N1, const RatMatrix& N2);

struct GradeVerdict {
    Verdict verdict;
    int grade = 0;
};

/// Linearization at infinity of grade 1 + t1 + t2 when the reversed blocks
/// keep full row rank at 0; absent blocks contribute t = 0.
GradeVerdict linearization_at_infinity_grade(const BlockFullRank& bfr, const RatMatrix& N1, const RatMatrix& N2,
                                             int t1, int t2);

/// Bounded search over t in [-span, span] for each present side; reports every
/// t that works.
std::vector<GradeVerdict> search_infinity_grades(const BlockFullRank& bfr, const RatMatrix& N1,
                                                 const RatMatrix& N2, int span);

/// One-block-column specialization: R = sum_i coeff_i(l) * rational_i(l),
/// assembled as [M; K1] with M the row of coefficient pencils and N1 the
/// stacked transposed rational factors.
struct OneBlockColumn {
    std::vector<Pencil> coefficients;       // p x n_i pencils
    std::vector<RatMatrix> rational_parts;  // n_i x m
    Pencil lower_block;                     // K1, dual to the stacked basis
};

struct OneBlockColumnResult {
    RatMatrix target;   // R = N2 M N1^T with N2 = I
    Region region;
    GradeVerdict at_infinity;
};

OneBlockColumnResult cor_locallin_check(const OneBlockColumn& data, int t);

}  // namespace ratlin
