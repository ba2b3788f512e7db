#pragma once

#include "ratlin/polymat.hpp"

#include <string>
#include <vector>

namespace ratlin {

/// A subset of the base field: everything, a finite point set, or the
/// complement of a finite point set. Cofinite regions may additionally
/// exclude the root sets of monic squarefree polynomials without rational
/// roots, so that loci like eigenvalues of a non-split characteristic
/// polynomial stay representable.
class Region {
  public:
    enum class Kind { All, Finite, Cofinite };

    static Region all() { return Region(Kind::All, {}, {}); }
    static Region only(std::vector<Rat> points);
    static Region except(std::vector<Rat> points, std::vector<Poly> factors = {});

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] const std::vector<Rat>& points() const { return points_; }
    [[nodiscard]] const std::vector<Poly>& excluded_factors() const { return factors_; }

    [[nodiscard]] bool contains(const Rat& x) const;
    /// Whether any root of a (nonconstant, rational-root-free) factor lies in the region.
    [[nodiscard]] bool meets_factor(const Poly& factor) const;

    [[nodiscard]] Region intersect(const Region& other) const;

    friend bool operator==(const Region& a, const Region& b) = default;
    [[nodiscard]] std::string to_string() const;

  private:
    Region(Kind k, std::vector<Rat> pts, std::vector<Poly> fac)
        : kind_(k), points_(std::move(pts)), factors_(std::move(fac)) {}
    Kind kind_;
    std::vector<Rat> points_;    // sorted, unique
    std::vector<Poly> factors_;  // cofinite only; canonical order
};

/// Diagonal fractions eps_i/psi_i of the Smith-McMillan form in a region.
struct SmithMcMillan {
    std::size_t rows = 0, cols = 0;
    std::vector<std::pair<Poly, Poly>> fractions;  // (eps_i, psi_i), coprime, monic
    Region region = Region::all();

    [[nodiscard]] std::size_t rank() const { return fractions.size(); }
    friend bool operator==(const SmithMcMillan& a, const SmithMcMillan& b) = default;
};

struct InvariantOrders {
    std::vector<int> orders;  // ascending
    Point point = Point::infinity();
    friend bool operator==(const InvariantOrders& a, const InvariantOrders& b) = default;
};

struct LocalStructure {
    std::vector<int> pole_mults;  // ascending, positive
    std::vector<int> zero_mults;  // ascending, positive
    Point point = Point::infinity();
    friend bool operator==(const LocalStructure& a, const LocalStructure& b) = default;
};

/// One eigenvalue (finite zero that is not a pole) or one symbolic zero factor.
struct Eigenvalue {
    bool symbolic = false;
    Rat point;          // when !symbolic
    Poly factor;        // when symbolic: squarefree monic without rational roots
    std::vector<int> zero_mults;  // ascending
};

/// Rectangular grid of rational functions.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<RatFun> entries);

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_poly(const PolyMatrix& P);
    static RatMatrix from_rows(const std::vector<std::vector<RatFun>>& rows);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] const RatFun& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    RatFun& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_polynomial() const;
    [[nodiscard]] PolyMatrix to_poly() const;  // requires is_polynomial()
    [[nodiscard]] bool is_proper() const;
    [[nodiscard]] bool is_strictly_proper() const;

    [[nodiscard]] RatMatrix submatrix(const std::vector<std::size_t>& keep_rows,
                                      const std::vector<std::size_t>& keep_cols) const;
    [[nodiscard]] RatMatrix transpose() const;
    /// Monic lcm of all entry denominators.
    [[nodiscard]] Poly common_denominator() const;

    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatFun& s, const RatMatrix& m);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RatFun> e_;
};

/// Block-diagonal augmentation diag(G, I_s).
RatMatrix diag_with_identity(const RatMatrix& G, std::size_t s);

std::size_t normal_rank(const RatMatrix& G);

/// G = Q + Gsp with Q polynomial and Gsp strictly proper (entrywise Euclidean division).
std::pair<PolyMatrix, RatMatrix> poly_sp_split(const RatMatrix& G);

SmithMcMillan smith_mcmillan(const RatMatrix& G, const Region& region = Region::all());

InvariantOrders invariant_orders(const RatMatrix& G, const Point& point);
LocalStructure local_structure(const RatMatrix& G, const Point& point);
LocalStructure local_structure(const InvariantOrders& orders);

std::vector<Eigenvalue> eigenvalues(const RatMatrix& G, const Region& region = Region::all());

/// l^g * G(1/l), entrywise.
RatMatrix g_reversal(const RatMatrix& G, int g);
/// Default grade: degree of the polynomial part, 0 for strictly proper matrices.
int default_grade(const RatMatrix& G);
RatMatrix reversal(const RatMatrix& G);

bool is_defined_at(const RatMatrix& G, const Point& point);
bool is_regular_at(const RatMatrix& G, const Point& point);

/// Constant value of G at a finite point where it is defined.
std::vector<std::vector<Rat>> eval_at(const RatMatrix& G, const Rat& x);
std::size_t rank_at(const RatMatrix& G, const Rat& x);

bool are_equivalent_in(const RatMatrix& G, const RatMatrix& H, const Region& region);

/// Exact inverse of a regular square rational matrix.
RatMatrix inverse(const RatMatrix& A);
/// Solve A X = B exactly; A square regular.
RatMatrix solve(const RatMatrix& A, const RatMatrix& B);

}  // namespace ratlin
