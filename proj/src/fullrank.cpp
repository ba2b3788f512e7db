#include "ratlin/fullrank.hpp"

#include <algorithm>

namespace ratlin {

namespace {

void require_full_row_normal_rank(const RatMatrix& R, const char* what) {
    if (normal_rank(R) != R.rows()) throw std::invalid_argument(std::string(what) + " lost full row normal rank");
}

std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

// Nonzero y with y^T M = 0, if one exists.
std::optional<std::vector<Rat>> left_null_vector(const std::vector<std::vector<Rat>>& M) {
    if (M.empty()) return std::nullopt;
    const std::size_t rows = M.size(), cols = M[0].size();
    // Eliminate on M^T; unknowns are the rows of M.
    std::vector<std::vector<Rat>> m(cols, std::vector<Rat>(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m[j][i] = M[i][j];
    std::vector<std::optional<std::size_t>> pivot_of_col(rows);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < rows && rank < cols; ++col) {
        std::size_t piv = rank;
        while (piv < cols && m[piv][col] == 0) ++piv;
        if (piv == cols) continue;
        std::swap(m[piv], m[rank]);
        const Rat inv = Rat(1) / m[rank][col];
        for (std::size_t j = col; j < rows; ++j) m[rank][j] *= inv;
        for (std::size_t i = 0; i < cols; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const Rat f = m[i][col];
            for (std::size_t j = col; j < rows; ++j) m[i][j] -= f * m[rank][j];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    std::size_t free_col = rows;
    for (std::size_t col = 0; col < rows; ++col)
        if (!pivot_of_col[col]) {
            free_col = col;
            break;
        }
    if (free_col == rows) return std::nullopt;
    std::vector<Rat> y(rows, Rat(0));
    y[free_col] = Rat(1);
    for (std::size_t col = 0; col < rows; ++col)
        if (pivot_of_col[col]) y[col] = -m[*pivot_of_col[col]][free_col];
    return y;
}

// Clears one finite zero locus of T given by the squarefree factor f0 of the
// last invariant polynomial: replaces one row by a combination divisible by
// f0, divided by f0. Row space over the rational functions is preserved.
void eliminate_zero_factor(PolyMatrix& T, const Poly& f0) {
    const int df = *f0.degree();
    const std::size_t rows = T.rows(), cols = T.cols();
    // Unknown polynomial coefficients y_r of degree < df; each column gives df
    // linear conditions (the remainder of the combination mod f0 vanishes).
    const std::size_t unknowns = rows * static_cast<std::size_t>(df);
    std::vector<std::vector<Rat>> sys(unknowns, std::vector<Rat>(cols * static_cast<std::size_t>(df), Rat(0)));
    for (std::size_t r = 0; r < rows; ++r)
        for (int k = 0; k < df; ++k) {
            const std::size_t row_idx = r * static_cast<std::size_t>(df) + static_cast<std::size_t>(k);
            for (std::size_t c = 0; c < cols; ++c) {
                const Poly contrib = poly_divmod(Poly::monomial(Rat(1), k) * T.at(r, c), f0).second;
                for (int t = 0; t < df; ++t)
                    sys[row_idx][c * static_cast<std::size_t>(df) + static_cast<std::size_t>(t)] = contrib.coeff(t);
            }
        }
    const auto y = left_null_vector(sys);
    if (!y) throw std::domain_error("zero elimination failed to find a kernel vector");
    std::vector<Poly> comb(rows);
    std::size_t target_row = rows;
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<Rat> cs(static_cast<std::size_t>(df), Rat(0));
        for (int k = 0; k < df; ++k) cs[static_cast<std::size_t>(k)] =
            (*y)[r * static_cast<std::size_t>(df) + static_cast<std::size_t>(k)];
        comb[r] = Poly{cs};
        if (!comb[r].is_zero()) target_row = r;
    }
    if (target_row == rows) throw std::domain_error("zero elimination produced a zero combination");
    std::vector<Poly> new_row(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        Poly acc;
        for (std::size_t r = 0; r < rows; ++r) acc += comb[r] * T.at(r, c);
        new_row[c] = poly_exact_div(acc, f0);
    }
    for (std::size_t c = 0; c < cols; ++c) T.at(target_row, c) = new_row[c];
}

}  // namespace

BlockFullRank::BlockFullRank(Pencil M, std::optional<Pencil> K1, std::optional<Pencil> K2)
    : M_(std::move(M)), K1_(std::move(K1)), K2_(std::move(K2)) {
    if (!M_.is_pencil()) throw std::invalid_argument("middle block degree exceeds one");
    if (K1_) {
        if (!K1_->is_pencil()) throw std::invalid_argument("lower block degree exceeds one");
        if (K1_->cols() != M_.cols()) throw std::invalid_argument("lower block width mismatch");
        if (normal_rank(*K1_) != K1_->rows()) throw std::invalid_argument("lower block lost full row normal rank");
    }
    if (K2_) {
        if (!K2_->is_pencil()) throw std::invalid_argument("right block degree exceeds one");
        if (K2_->cols() != M_.rows()) throw std::invalid_argument("right block height mismatch");
        if (normal_rank(*K2_) != K2_->rows()) throw std::invalid_argument("right block lost full row normal rank");
    }
    const std::size_t k1_rows = K1_ ? K1_->rows() : 0;
    const std::size_t k2_rows = K2_ ? K2_->rows() : 0;
    L_ = Pencil(M_.rows() + k1_rows, M_.cols() + k2_rows);
    for (std::size_t i = 0; i < M_.rows(); ++i)
        for (std::size_t j = 0; j < M_.cols(); ++j) L_.at(i, j) = M_.at(i, j);
    if (K2_) {
        const Pencil K2t = K2_->transpose();
        for (std::size_t i = 0; i < K2t.rows(); ++i)
            for (std::size_t j = 0; j < K2t.cols(); ++j) L_.at(i, M_.cols() + j) = K2t.at(i, j);
    }
    if (K1_)
        for (std::size_t i = 0; i < K1_->rows(); ++i)
            for (std::size_t j = 0; j < K1_->cols(); ++j) L_.at(M_.rows() + i, j) = K1_->at(i, j);
}

bool check_duality(const DualBasisPair& pair) {
    const RatMatrix& K = pair.basis;
    const RatMatrix& N = pair.dual_basis;
    if (K.cols() != N.cols()) return false;
    if (K.rows() + N.rows() != K.cols()) return false;
    if (normal_rank(K) != K.rows() || normal_rank(N) != N.rows()) return false;
    return (K * N.transpose()).is_zero();
}

PolyMatrix row_space_minimal_basis(const RatMatrix& R) {
    require_full_row_normal_rank(R, "factorization input");
    // Row-wise denominator clearing keeps the row space.
    PolyMatrix T(R.rows(), R.cols());
    for (std::size_t i = 0; i < R.rows(); ++i) {
        Poly d = Poly::one();
        for (std::size_t j = 0; j < R.cols(); ++j) d = poly_lcm(d, R.at(i, j).den());
        for (std::size_t j = 0; j < R.cols(); ++j) {
            const RatFun& f = R.at(i, j);
            T.at(i, j) = f.num() * poly_exact_div(d, f.den());
        }
    }

    // Remove finite zeros, one squarefree factor of the last invariant at a time.
    for (;;) {
        const SmithForm s = smith_form(T);
        const Poly& last = s.invariants.back();
        if (last.is_constant()) break;
        const FactoredPoly f = factor_poly(last);
        const auto roots = f.rational_roots();
        if (!roots.empty()) {
            eliminate_zero_factor(T, Poly::linear_root(roots.front().first));
        } else {
            eliminate_zero_factor(T, f.nonlinear_factors().front().base);
        }
    }

    // Row-degree reduction until the highest row degree coefficient matrix has
    // full row rank.
    for (;;) {
        const auto hi = highest_row_degree_matrix(T);
        if (rank_of_constant(hi) == T.rows()) break;
        const auto y = left_null_vector(hi);
        if (!y) throw std::domain_error("row degree reduction failed");
        const std::size_t rows = T.rows(), cols = T.cols();
        auto row_degree = [&](std::size_t i) -> int {
            int d = -1;
            for (std::size_t j = 0; j < cols; ++j)
                if (auto dj = T.at(i, j).degree()) d = std::max(d, *dj);
            return d;
        };
        std::size_t target_row = rows;
        int dmax = -1;
        for (std::size_t i = 0; i < rows; ++i) {
            if ((*y)[i] == 0) continue;
            const int d = row_degree(i);
            if (d > dmax) {
                dmax = d;
                target_row = i;
            }
        }
        if (target_row == rows) throw std::domain_error("row degree reduction failed");
        std::vector<Poly> new_row(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            Poly acc;
            for (std::size_t i = 0; i < rows; ++i) {
                if ((*y)[i] == 0) continue;
                acc += (*y)[i] * (Poly::monomial(Rat(1), dmax - row_degree(i)) * T.at(i, j));
            }
            new_row[j] = acc;
        }
        for (std::size_t j = 0; j < cols; ++j) T.at(target_row, j) = new_row[j];
    }
    return T;
}

MinimalBasisFactorization minimal_basis_factor(const RatMatrix& R) {
    MinimalBasisFactorization out;
    out.minimal_part = row_space_minimal_basis(R);
    // Solve S * T = R through a nonsingular column subset of T.
    const RatMatrix Trat = RatMatrix::from_poly(out.minimal_part);
    const std::size_t p = Trat.rows();
    std::vector<std::size_t> cols_pick;
    {
        RatMatrix work = Trat;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < work.cols() && rank < p; ++col) {
            std::size_t piv = rank;
            while (piv < p && work.at(piv, col).is_zero()) ++piv;
            if (piv == p) continue;
            for (std::size_t j = 0; j < work.cols(); ++j) std::swap(work.at(piv, j), work.at(rank, j));
            const RatFun inv = RatFun{Rat(1)} / work.at(rank, col);
            for (std::size_t j = 0; j < work.cols(); ++j) work.at(rank, j) = inv * work.at(rank, j);
            for (std::size_t i = 0; i < p; ++i) {
                if (i == rank || work.at(i, col).is_zero()) continue;
                const RatFun f = work.at(i, col);
                for (std::size_t j = 0; j < work.cols(); ++j)
                    work.at(i, j) = work.at(i, j) - f * work.at(rank, j);
            }
            cols_pick.push_back(col);
            ++rank;
        }
        if (rank != p) throw std::domain_error("minimal basis lost rank");
    }
    const RatMatrix Tsub = Trat.submatrix(iota_indices(p), cols_pick);
    const RatMatrix Rsub = R.submatrix(iota_indices(R.rows()), cols_pick);
    out.regular_part = solve(Tsub.transpose(), Rsub.transpose()).transpose();
    if (!(out.regular_part * Trat == R)) throw std::domain_error("row space factorization failed");
    return out;
}

Region full_row_rank_region(const RatMatrix& R) {
    require_full_row_normal_rank(R, "full row rank region input");
    std::vector<Rat> excluded;
    std::vector<Poly> symbolic;
    // Points where some entry is undefined.
    for (std::size_t i = 0; i < R.rows(); ++i)
        for (std::size_t j = 0; j < R.cols(); ++j) {
            const Poly& den = R.at(i, j).den();
            if (den.is_constant()) continue;
            const FactoredPoly f = factor_poly(den);
            for (const auto& [root, mult] : f.rational_roots()) {
                (void)mult;
                excluded.push_back(root);
            }
            for (const auto& fac : f.nonlinear_factors()) symbolic.push_back(fac.base);
        }
    // Points where the cleared matrix loses rank.
    const Poly d = R.common_denominator();
    PolyMatrix cleared(R.rows(), R.cols());
    for (std::size_t i = 0; i < R.rows(); ++i)
        for (std::size_t j = 0; j < R.cols(); ++j) {
            const RatFun& f = R.at(i, j);
            cleared.at(i, j) = f.num() * poly_exact_div(d, f.den());
        }
    const SmithForm s = smith_form(cleared);
    if (s.rank() != R.rows()) throw std::domain_error("cleared matrix lost rank");
    const Poly& last = s.invariants.back();
    if (!last.is_constant()) {
        const FactoredPoly f = factor_poly(last);
        for (const auto& [root, mult] : f.rational_roots()) {
            (void)mult;
            excluded.push_back(root);
        }
        for (const auto& fac : f.nonlinear_factors()) symbolic.push_back(fac.base);
    }
    return Region::except(std::move(excluded), coprime_basis(symbolic));
}

bool full_row_rank_at(const RatMatrix& R, const Rat& x) {
    if (!is_defined_at(R, Point::at(x))) return false;
    return rank_at(R, x) == R.rows();
}

bool reversed_full_row_rank_at_zero(const RatMatrix& R, int t) {
    return full_row_rank_at(g_reversal(R, t), Rat(0));
}

namespace {

RatMatrix basis_or_identity(const std::optional<Pencil>& K, const RatMatrix* N, std::size_t fallback_dim,
                            const char* side) {
    if (K) {
        if (!N) throw std::invalid_argument(std::string("missing dual basis for ") + side);
        DualBasisPair pair{RatMatrix::from_poly(*K), *N};
        if (!check_duality(pair)) throw std::invalid_argument(std::string("duality check failed for ") + side);
        return *N;
    }
    if (N && !(*N == RatMatrix::identity(fallback_dim)))
        throw std::invalid_argument(std::string("absent ") + side + " requires an identity dual basis");
    return RatMatrix::identity(fallback_dim);
}

}  // namespace

RatMatrix associated_rational(const BlockFullRank& bfr, const RatMatrix& N1, const RatMatrix& N2) {
    const RatMatrix n1 = basis_or_identity(bfr.k1(), &N1, bfr.middle().cols(), "lower block");
    const RatMatrix n2 = basis_or_identity(bfr.k2(), &N2, bfr.middle().rows(), "right block");
    return n2 * RatMatrix::from_poly(bfr.middle()) * n1.transpose();
}

CertifiedRegion linearization_region(const BlockFullRank& bfr, const RatMatrix& N1, const RatMatrix& N2) {
    CertifiedRegion out{associated_rational(bfr, N1, N2), Region::all()};
    if (bfr.k1()) {
        out.region = out.region.intersect(full_row_rank_region(RatMatrix::from_poly(*bfr.k1())));
        out.region = out.region.intersect(full_row_rank_region(N1));
    }
    if (bfr.k2()) {
        out.region = out.region.intersect(full_row_rank_region(RatMatrix::from_poly(*bfr.k2())));
        out.region = out.region.intersect(full_row_rank_region(N2));
    }
    return out;
}

GradeVerdict linearization_at_infinity_grade(const BlockFullRank& bfr, const RatMatrix& N1, const RatMatrix& N2,
                                             int t1, int t2) {
    GradeVerdict out;
    if (!bfr.k1()) t1 = 0;
    if (!bfr.k2()) t2 = 0;
    out.grade = 1 + t1 + t2;
    const auto deg = bfr.assembled().degree();
    if (!deg || *deg != 1) {
        out.verdict = Verdict::no("assembled matrix is not a degree-one pencil");
        return out;
    }
    if (bfr.k1()) {
        if (!full_row_rank_at(g_reversal(RatMatrix::from_poly(*bfr.k1()), 1), Rat(0))) {
            out.verdict = Verdict::no("reversed lower block loses rank at 0");
            return out;
        }
        if (!reversed_full_row_rank_at_zero(N1, t1)) {
            out.verdict = Verdict::no("reversed lower dual basis loses rank at 0 for t=" + std::to_string(t1));
            return out;
        }
    }
    if (bfr.k2()) {
        if (!full_row_rank_at(g_reversal(RatMatrix::from_poly(*bfr.k2()), 1), Rat(0))) {
            out.verdict = Verdict::no("reversed right block loses rank at 0");
            return out;
        }
        if (!reversed_full_row_rank_at_zero(N2, t2)) {
            out.verdict = Verdict::no("reversed right dual basis loses rank at 0 for t=" + std::to_string(t2));
            return out;
        }
    }
    out.verdict = Verdict::yes();
    return out;
}

std::vector<GradeVerdict> search_infinity_grades(const BlockFullRank& bfr, const RatMatrix& N1,
                                                 const RatMatrix& N2, int span) {
    std::vector<GradeVerdict> hits;
    const std::vector<int> zero{0};
    std::vector<int> range;
    for (int t = -span; t <= span; ++t) range.push_back(t);
    const auto& ts1 = bfr.k1() ? range : zero;
    const auto& ts2 = bfr.k2() ? range : zero;
    for (int t1 : ts1)
        for (int t2 : ts2) {
            GradeVerdict v = linearization_at_infinity_grade(bfr, N1, N2, t1, t2);
            if (v.verdict.holds) hits.push_back(v);
        }
    return hits;
}

OneBlockColumnResult cor_locallin_check(const OneBlockColumn& data, int t) {
    if (data.coefficients.size() != data.rational_parts.size() || data.coefficients.empty())
        throw std::invalid_argument("coefficient and rational factor lists must match and be nonempty");
    const std::size_t p = data.coefficients.front().rows();
    const std::size_t m = data.rational_parts.front().cols();
    std::size_t total = 0;
    for (std::size_t i = 0; i < data.coefficients.size(); ++i) {
        if (data.coefficients[i].rows() != p) throw std::invalid_argument("coefficient height mismatch");
        if (data.coefficients[i].cols() != data.rational_parts[i].rows())
            throw std::invalid_argument("inner dimension mismatch");
        if (data.rational_parts[i].cols() != m) throw std::invalid_argument("rational factor width mismatch");
        total += data.coefficients[i].cols();
    }
    Pencil M(p, total);
    RatMatrix N1(m, total);
    std::size_t off = 0;
    for (std::size_t i = 0; i < data.coefficients.size(); ++i) {
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t c = 0; c < data.coefficients[i].cols(); ++c)
                M.at(r, off + c) = data.coefficients[i].at(r, c);
        const RatMatrix Rt = data.rational_parts[i].transpose();
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < Rt.cols(); ++c) N1.at(r, off + c) = Rt.at(r, c);
        off += data.coefficients[i].cols();
    }
    if (normal_rank(N1) != N1.rows()) throw std::invalid_argument("stacked rational basis lost full row normal rank");
    BlockFullRank bfr(M, data.lower_block, std::nullopt);
    const RatMatrix N2 = RatMatrix::identity(p);
    OneBlockColumnResult out{associated_rational(bfr, N1, N2), Region::all(), {}};
    CertifiedRegion cert = linearization_region(bfr, N1, N2);
    out.region = cert.region;
    out.at_infinity = linearization_at_infinity_grade(bfr, N1, N2, t, 0);
    return out;
}

}  // namespace ratlin
