#include "ratlin/polymat.hpp"
#include "ratlin/detail/intpoly.hpp"
#include "ratlin/ratmat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ratlin {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw std::invalid_argument("entry count does not match dimensions");
}

PolyMatrix PolyMatrix::identity(std::size_t n) {
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::one();
    return m;
}

PolyMatrix PolyMatrix::constant(const std::vector<std::vector<Rat>>& grid) {
    if (grid.empty()) return {};
    PolyMatrix m(grid.size(), grid[0].size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].size() != grid[0].size()) throw std::invalid_argument("ragged constant matrix");
        for (std::size_t j = 0; j < grid[i].size(); ++j) m.at(i, j) = Poly{grid[i][j]};
    }
    return m;
}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<Poly>>& rows) {
    if (rows.empty()) return {};
    PolyMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Poly& p) { return p.is_zero(); });
}

std::optional<int> PolyMatrix::degree() const {
    std::optional<int> d;
    for (const Poly& p : e_) {
        if (auto pd = p.degree()) d = d ? std::max(*d, *pd) : *pd;
    }
    return d;
}

bool PolyMatrix::is_pencil() const {
    auto d = degree();
    return !d || *d <= 1;
}

std::vector<std::vector<Rat>> PolyMatrix::coefficient(int k) const {
    std::vector<std::vector<Rat>> m(rows_, std::vector<Rat>(cols_, Rat(0)));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m[i][j] = at(i, j).coeff(k);
    return m;
}

std::vector<std::vector<Rat>> PolyMatrix::eval(const Rat& x) const {
    std::vector<std::vector<Rat>> m(rows_, std::vector<Rat>(cols_, Rat(0)));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m[i][j] = at(i, j).eval(x);
    return m;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& keep_rows,
                                 const std::vector<std::size_t>& keep_cols) const {
    PolyMatrix m(keep_rows.size(), keep_cols.size());
    for (std::size_t i = 0; i < keep_rows.size(); ++i)
        for (std::size_t j = 0; j < keep_cols.size(); ++j) m.at(i, j) = at(keep_rows[i], keep_cols[j]);
    return m;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
    PolyMatrix m = a;
    for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] += b.e_[k];
    return m;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
    PolyMatrix m = a;
    for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] -= b.e_[k];
    return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
    PolyMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return m;
}

PolyMatrix operator*(const Poly& s, const PolyMatrix& m) {
    PolyMatrix r = m;
    for (auto& e : r.e_) e = s * e;
    return r;
}

std::vector<int> ElementaryDivisors::at(const Rat& a) const {
    const Poly lin = Poly::linear_root(a);
    for (const auto& [base, mults] : by_factor) {
        if (base == lin) return mults;
    }
    return {};
}

namespace {

using intpoly::IPoly;

// Scalar that turns a set of polynomials into integer coefficients with unit
// content; scaling a whole row or column is unimodular over the rationals.
Rat primitive_scale(const std::vector<const Poly*>& entries) {
    Int den_lcm = 1;
    for (const Poly* p : entries)
        for (const Rat& c : p->coeffs()) den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(c));
    Int num_gcd = 0;
    for (const Poly* p : entries)
        for (const Rat& c : p->coeffs())
            num_gcd = boost::multiprecision::gcd(num_gcd, Int(rat_num(c) * (den_lcm / rat_den(c))));
    if (num_gcd == 0) return Rat(1);
    return Rat(den_lcm, num_gcd);
}

void normalize_row(PolyMatrix& m, std::size_t i, std::size_t from_col) {
    std::vector<const Poly*> entries;
    for (std::size_t j = from_col; j < m.cols(); ++j) entries.push_back(&m.at(i, j));
    const Rat s = primitive_scale(entries);
    if (s == 1) return;
    for (std::size_t j = from_col; j < m.cols(); ++j) m.at(i, j) = s * m.at(i, j);
}

void normalize_col(PolyMatrix& m, std::size_t j, std::size_t from_row) {
    std::vector<const Poly*> entries;
    for (std::size_t i = from_row; i < m.rows(); ++i) entries.push_back(&m.at(i, j));
    const Rat s = primitive_scale(entries);
    if (s == 1) return;
    for (std::size_t i = from_row; i < m.rows(); ++i) m.at(i, j) = s * m.at(i, j);
}

}  // namespace

SmithForm smith_form(const PolyMatrix& P) {
    SmithForm out;
    out.rows = P.rows();
    out.cols = P.cols();
    const std::size_t rows = P.rows(), cols = P.cols();
    const std::size_t lim = std::min(rows, cols);
    if (lim == 0) return out;
    PolyMatrix m = P;

    for (std::size_t k = 0; k < lim; ++k) {
        // Move a nonzero entry of minimal degree in the trailing block to (k, k).
        auto place_pivot = [&]() -> bool {
            std::size_t pi = k, pj = k;
            bool found = false;
            for (std::size_t i = k; i < rows; ++i)
                for (std::size_t j = k; j < cols; ++j) {
                    if (m.at(i, j).is_zero()) continue;
                    if (!found || *m.at(i, j).degree() < *m.at(pi, pj).degree()) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) return false;
            if (pi != k)
                for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(pi, j), m.at(k, j));
            if (pj != k)
                for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, pj), m.at(i, k));
            return true;
        };
        if (!place_pivot()) break;

        // One-shot clearing: a dividing pivot clears with a single quotient
        // row operation, anything else goes through an extended-gcd pair
        // transform that strictly lowers the pivot degree. No remainder
        // cascades, so degrees and coefficient sizes stay controlled.
        auto clear_col_entry = [&](std::size_t i) {
            const Poly a = m.at(i, k);
            const Poly& p = m.at(k, k);
            auto [q, r] = poly_divmod(a, p);
            if (r.is_zero()) {
                for (std::size_t j = k; j < cols; ++j) m.at(i, j) -= q * m.at(k, j);
                normalize_row(m, i, k);
                return;
            }
            const PolyXgcd x = poly_xgcd(p, a);
            const Poly pg = poly_exact_div(p, x.g);
            const Poly ag = poly_exact_div(a, x.g);
            for (std::size_t j = k; j < cols; ++j) {
                const Poly rk = m.at(k, j);
                const Poly ri = m.at(i, j);
                m.at(k, j) = x.s * rk + x.t * ri;
                m.at(i, j) = pg * ri - ag * rk;
            }
            normalize_row(m, k, k);
            normalize_row(m, i, k);
        };
        auto clear_row_entry = [&](std::size_t j) {
            const Poly a = m.at(k, j);
            const Poly& p = m.at(k, k);
            auto [q, r] = poly_divmod(a, p);
            if (r.is_zero()) {
                for (std::size_t i = k; i < rows; ++i) m.at(i, j) -= q * m.at(i, k);
                normalize_col(m, j, k);
                return;
            }
            const PolyXgcd x = poly_xgcd(p, a);
            const Poly pg = poly_exact_div(p, x.g);
            const Poly ag = poly_exact_div(a, x.g);
            for (std::size_t i = k; i < rows; ++i) {
                const Poly ck = m.at(i, k);
                const Poly cj = m.at(i, j);
                m.at(i, k) = x.s * ck + x.t * cj;
                m.at(i, j) = pg * cj - ag * ck;
            }
            normalize_col(m, k, k);
            normalize_col(m, j, k);
        };

        for (;;) {
            // Alternate until the pivot row and column are both clear; each
            // extended-gcd event strictly lowers the pivot degree, so the
            // alternation terminates.
            for (;;) {
                bool dirty = false;
                for (std::size_t i = k + 1; i < rows; ++i)
                    if (!m.at(i, k).is_zero()) {
                        clear_col_entry(i);
                        dirty = true;
                    }
                for (std::size_t j = k + 1; j < cols; ++j)
                    if (!m.at(k, j).is_zero()) {
                        clear_row_entry(j);
                        dirty = true;
                    }
                if (!dirty) break;
            }
            // Divisibility pass over the trailing block.
            std::size_t offender = rows;
            for (std::size_t i = k + 1; i < rows && offender == rows; ++i)
                for (std::size_t j = k + 1; j < cols; ++j)
                    if (!poly_divmod(m.at(i, j), m.at(k, k)).second.is_zero()) {
                        offender = i;
                        break;
                    }
            if (offender == rows) break;
            // Fold the offending row into the pivot row; clearing it forces an
            // extended-gcd step that lowers the pivot degree.
            for (std::size_t j = k; j < cols; ++j) m.at(k, j) += m.at(offender, j);
            normalize_row(m, k, k);
        }
        out.invariants.push_back(m.at(k, k).monic());
    }
    return out;
}

namespace {

void enumerate_subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

}  // namespace

Poly determinant(const PolyMatrix& P) {
    if (P.rows() != P.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = P.rows();
    if (n == 0) return Poly::one();
    // Fraction-free Bareiss elimination over Z[l]; the one global scaling
    // constant is divided back out at the end.
    Int den_lcm = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const Rat& c : P.at(i, j).coeffs())
                den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(c));
    std::vector<std::vector<IPoly>> m(n, std::vector<IPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Poly& p = P.at(i, j);
            IPoly v(p.coeffs().size());
            for (std::size_t t = 0; t < v.size(); ++t) {
                const Rat& c = p.coeffs()[t];
                v[t] = rat_num(c) * (den_lcm / rat_den(c));
            }
            m[i][j] = std::move(v);
        }

    IPoly prev{Int(1)};
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].empty()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].empty()) ++swap_row;
            if (swap_row == n) return Poly::zero();
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                IPoly v = intpoly::sub(intpoly::mul(m[i][j], m[k][k]), intpoly::mul(m[i][k], m[k][j]));
                m[i][j] = v.empty() ? IPoly{} : intpoly::exact_div(std::move(v), prev);
            }
        prev = m[k][k];
        if (prev.empty()) return Poly::zero();
    }
    Poly d = intpoly::to_poly(m[n - 1][n - 1]);
    Rat scale = Rat(1, den_lcm);
    Rat total(1);
    for (std::size_t i = 0; i < n; ++i) total *= scale;
    if (sign < 0) total = -total;
    return total * d;
}

SmithForm smith_via_minors(const PolyMatrix& P) {
    SmithForm out;
    out.rows = P.rows();
    out.cols = P.cols();
    Poly prev_delta = Poly::one();
    const std::size_t lim = std::min(P.rows(), P.cols());
    for (std::size_t k = 1; k <= lim; ++k) {
        Poly delta;  // gcd of all k x k minors
        bool any = false;
        enumerate_subsets(P.rows(), k, [&](const std::vector<std::size_t>& ri) {
            enumerate_subsets(P.cols(), k, [&](const std::vector<std::size_t>& ci) {
                Poly mi = determinant(P.submatrix(ri, ci));
                if (mi.is_zero()) return;
                delta = any ? poly_gcd(delta, mi) : mi.monic();
                any = true;
            });
        });
        if (!any) break;
        out.invariants.push_back(poly_exact_div(delta, prev_delta).monic());
        prev_delta = delta;
    }
    return out;
}

std::vector<int> local_elementary_divisors(const PolyMatrix& P, const Rat& a) {
    std::vector<int> mults;
    for (const Poly& d : smith_form(P).invariants) {
        const int m = d.root_multiplicity(a);
        if (m > 0) mults.push_back(m);
    }
    std::sort(mults.begin(), mults.end());
    return mults;
}

ElementaryDivisors elementary_divisors(const PolyMatrix& P) {
    ElementaryDivisors out;
    std::vector<FactoredPoly> factored;
    for (const Poly& d : smith_form(P).invariants) factored.push_back(factor_poly(d));
    std::vector<Poly> bases;
    for (const auto& f : factored)
        for (const auto& fac : f.factors) bases.push_back(fac.base);
    for (const Poly& base : coprime_basis(bases)) {
        std::vector<int> mults;
        for (const auto& f : factored) {
            const int m = divisor_multiplicity(f.expand(), base);
            if (m > 0) mults.push_back(m);
        }
        std::sort(mults.begin(), mults.end());
        if (!mults.empty()) out.by_factor.emplace_back(base, std::move(mults));
    }
    return out;
}

std::size_t rank_of_constant(std::vector<std::vector<Rat>> m) {
    if (m.empty() || m[0].empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        const Rat inv = Rat(1) / m[rank][col];
        for (std::size_t j = col; j < cols; ++j) m[rank][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const Rat f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_at(const PolyMatrix& P, const Rat& a) { return rank_of_constant(P.eval(a)); }

std::size_t normal_rank(const PolyMatrix& P) {
    // A largest not-identically-zero minor has degree at most
    // min(rows, cols) * max entry degree, so it cannot vanish at that many
    // distinct sample points plus one: the maximum evaluated rank over the
    // samples is exactly the normal rank.
    const auto maxdeg = P.degree();
    if (!maxdeg) return 0;
    const std::size_t lim = std::min(P.rows(), P.cols());
    const long long samples = static_cast<long long>(lim) * *maxdeg + 1;
    std::size_t best = 0;
    for (long long t = 0; t < samples; ++t) {
        const Rat x = (t % 2 == 0) ? Rat(t / 2) : Rat(-(t / 2) - 1);
        best = std::max(best, rank_at(P, x));
        if (best == lim) break;
    }
    return best;
}

bool is_unimodular(const PolyMatrix& P) {
    if (P.rows() != P.cols()) throw std::invalid_argument("unimodularity requires a square matrix");
    const Poly d = determinant(P);
    return !d.is_zero() && d.is_constant();
}

std::vector<std::vector<Rat>> highest_row_degree_matrix(const PolyMatrix& K) {
    std::vector<std::vector<Rat>> m(K.rows(), std::vector<Rat>(K.cols(), Rat(0)));
    for (std::size_t i = 0; i < K.rows(); ++i) {
        std::optional<int> rd;
        for (std::size_t j = 0; j < K.cols(); ++j) {
            if (auto d = K.at(i, j).degree()) rd = rd ? std::max(*rd, *d) : *d;
        }
        if (!rd) continue;
        for (std::size_t j = 0; j < K.cols(); ++j) m[i][j] = K.at(i, j).coeff(*rd);
    }
    return m;
}

bool is_minimal_basis(const PolyMatrix& K) {
    if (K.rows() >= K.cols()) throw std::invalid_argument("minimal basis test requires rows < cols");
    const SmithForm s = smith_form(K);
    if (s.rank() != K.rows()) return false;
    for (const Poly& d : s.invariants) {
        if (!(d == Poly::one())) return false;
    }
    return rank_of_constant(highest_row_degree_matrix(K)) == K.rows();
}

PolyMatrix reversal_poly(const PolyMatrix& P, int g) {
    PolyMatrix m(P.rows(), P.cols());
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t j = 0; j < P.cols(); ++j) m.at(i, j) = P.at(i, j).reversal(g);
    return m;
}

std::variant<PolyMatrix, RatMatrix> reversal(const PolyMatrix& P, int g) {
    const auto d = P.degree();
    if (!d || g >= *d) return reversal_poly(P, g);
    return g_reversal(RatMatrix::from_poly(P), g);
}

}  // namespace ratlin
