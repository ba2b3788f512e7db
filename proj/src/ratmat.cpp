#include "ratlin/ratmat.hpp"

#include <algorithm>
#include <sstream>

namespace ratlin {

Region Region::only(std::vector<Rat> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return Region(Kind::Finite, std::move(points), {});
}

Region Region::except(std::vector<Rat> points, std::vector<Poly> factors) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (auto& f : factors) f = f.monic();
    std::sort(factors.begin(), factors.end(), [](const Poly& a, const Poly& b) { return a.compare(b) < 0; });
    factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
    if (points.empty() && factors.empty()) return all();
    return Region(Kind::Cofinite, std::move(points), std::move(factors));
}

bool Region::contains(const Rat& x) const {
    switch (kind_) {
        case Kind::All: return true;
        case Kind::Finite: return std::binary_search(points_.begin(), points_.end(), x);
        case Kind::Cofinite: return !std::binary_search(points_.begin(), points_.end(), x);
    }
    return false;
}

bool Region::meets_factor(const Poly& factor) const {
    // factor is nonconstant with no rational roots, so its roots never lie in
    // a finite set of rational points and always avoid a rational excluded set
    // -- unless an excluded factor covers them.
    switch (kind_) {
        case Kind::All: return true;
        case Kind::Finite: return false;
        case Kind::Cofinite: {
            Poly rest = factor.monic();
            for (const Poly& ex : factors_) {
                const Poly g = poly_gcd(rest, ex);
                if (!g.is_constant()) rest = poly_exact_div(rest, g).monic();
                if (rest.is_constant()) return false;
            }
            return true;
        }
    }
    return false;
}

Region Region::intersect(const Region& other) const {
    if (kind_ == Kind::All) return other;
    if (other.kind_ == Kind::All) return *this;
    if (kind_ == Kind::Finite || other.kind_ == Kind::Finite) {
        const Region& fin = kind_ == Kind::Finite ? *this : other;
        const Region& oth = kind_ == Kind::Finite ? other : *this;
        std::vector<Rat> pts;
        for (const Rat& p : fin.points_)
            if (oth.contains(p)) pts.push_back(p);
        return only(std::move(pts));
    }
    std::vector<Rat> pts = points_;
    pts.insert(pts.end(), other.points_.begin(), other.points_.end());
    std::vector<Poly> fac = factors_;
    fac.insert(fac.end(), other.factors_.begin(), other.factors_.end());
    return except(std::move(pts), std::move(fac));
}

std::string Region::to_string() const {
    auto list = [&](const std::vector<Rat>& pts, const std::vector<Poly>& fac) {
        std::ostringstream os;
        bool first = true;
        for (const Rat& p : pts) {
            if (!first) os << ",";
            os << rat_to_string(p);
            first = false;
        }
        for (const Poly& f : fac) {
            if (!first) os << ",";
            os << "roots(" << poly_to_string(f) << ")";
            first = false;
        }
        return os.str();
    };
    switch (kind_) {
        case Kind::All: return "all";
        case Kind::Finite: return "only:{" + list(points_, {}) + "}";
        case Kind::Cofinite: return "except:{" + list(points_, factors_) + "}";
    }
    return "";
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<RatFun> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw std::invalid_argument("entry count does not match dimensions");
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RatFun{Rat(1)};
    return m;
}

RatMatrix RatMatrix::from_poly(const PolyMatrix& P) {
    RatMatrix m(P.rows(), P.cols());
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t j = 0; j < P.cols(); ++j) m.at(i, j) = RatFun{P.at(i, j)};
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<RatFun>>& rows) {
    if (rows.empty()) return {};
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool RatMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const RatFun& f) { return f.is_zero(); });
}

bool RatMatrix::is_polynomial() const {
    return std::all_of(e_.begin(), e_.end(), [](const RatFun& f) { return f.is_polynomial(); });
}

PolyMatrix RatMatrix::to_poly() const {
    if (!is_polynomial()) throw std::domain_error("matrix has non-polynomial entries");
    PolyMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).num();
    return m;
}

bool RatMatrix::is_proper() const {
    return std::all_of(e_.begin(), e_.end(), [](const RatFun& f) { return f.is_proper(); });
}

bool RatMatrix::is_strictly_proper() const {
    return std::all_of(e_.begin(), e_.end(), [](const RatFun& f) { return f.is_strictly_proper(); });
}

RatMatrix RatMatrix::submatrix(const std::vector<std::size_t>& keep_rows,
                               const std::vector<std::size_t>& keep_cols) const {
    RatMatrix m(keep_rows.size(), keep_cols.size());
    for (std::size_t i = 0; i < keep_rows.size(); ++i)
        for (std::size_t j = 0; j < keep_cols.size(); ++j) m.at(i, j) = at(keep_rows[i], keep_cols[j]);
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Poly RatMatrix::common_denominator() const {
    Poly d = Poly::one();
    for (const RatFun& f : e_) d = poly_lcm(d, f.den());
    return d;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
    RatMatrix m = a;
    for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] = m.e_[k] + b.e_[k];
    return m;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
    RatMatrix m = a;
    for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] = m.e_[k] - b.e_[k];
    return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
    RatMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                m.at(i, j) = m.at(i, j) + a.at(i, k) * b.at(k, j);
        }
    return m;
}

RatMatrix operator*(const RatFun& s, const RatMatrix& m) {
    RatMatrix r = m;
    for (auto& e : r.e_) e = s * e;
    return r;
}

RatMatrix diag_with_identity(const RatMatrix& G, std::size_t s) {
    RatMatrix m(G.rows() + s, G.cols() + s);
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) m.at(i, j) = G.at(i, j);
    for (std::size_t k = 0; k < s; ++k) m.at(G.rows() + k, G.cols() + k) = RatFun{Rat(1)};
    return m;
}

std::size_t normal_rank(const RatMatrix& G) {
    const Poly d = G.common_denominator();
    PolyMatrix cleared(G.rows(), G.cols());
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) {
            const RatFun& f = G.at(i, j);
            cleared.at(i, j) = f.num() * poly_exact_div(d, f.den());
        }
    return normal_rank(cleared);
}

std::pair<PolyMatrix, RatMatrix> poly_sp_split(const RatMatrix& G) {
    PolyMatrix Q(G.rows(), G.cols());
    RatMatrix sp(G.rows(), G.cols());
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) {
            auto [q, r] = G.at(i, j).split_polynomial_part();
            Q.at(i, j) = q;
            sp.at(i, j) = r;
        }
    return {Q, sp};
}

namespace {

// Keep only the factors of p whose roots lie in the region.
Poly filter_to_region(const Poly& p, const Region& region) {
    if (region.kind() == Region::Kind::All) return p.monic();
    Poly kept = Poly::one();
    const FactoredPoly f = factor_poly(p);
    for (const auto& fac : f.factors) {
        bool keep = false;
        if (fac.base.degree() == 1) {
            keep = region.contains(-fac.base.coeff(0));
            if (keep) kept = kept * poly_pow(fac.base, fac.multiplicity);
        } else {
            // Split against excluded factors; keep the part that meets the region.
            Poly rest = fac.base;
            if (region.kind() == Region::Kind::Cofinite) {
                for (const Poly& ex : region.excluded_factors()) {
                    const Poly g = poly_gcd(rest, ex);
                    if (!g.is_constant()) rest = poly_exact_div(rest, g).monic();
                    if (rest.is_constant()) break;
                }
                if (!rest.is_constant()) kept = kept * poly_pow(rest, fac.multiplicity);
            }
            // Finite regions contain no roots of rational-root-free factors.
        }
    }
    return kept;
}

}  // namespace

SmithMcMillan smith_mcmillan(const RatMatrix& G, const Region& region) {
    SmithMcMillan out;
    out.rows = G.rows();
    out.cols = G.cols();
    out.region = region;
    const Poly d = G.common_denominator();
    PolyMatrix cleared(G.rows(), G.cols());
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) {
            const RatFun& f = G.at(i, j);
            cleared.at(i, j) = f.num() * poly_exact_div(d, f.den());
        }
    for (const Poly& inv : smith_form(cleared).invariants) {
        const RatFun frac = RatFun(inv, d);
        out.fractions.emplace_back(filter_to_region(frac.num(), region), filter_to_region(frac.den(), region));
    }
    return out;
}

InvariantOrders invariant_orders(const RatMatrix& G, const Point& point) {
    InvariantOrders out;
    out.point = point;
    if (point.is_infinity()) {
        InvariantOrders at_zero = invariant_orders(g_reversal(G, 0), Point::at(Rat(0)));
        out.orders = std::move(at_zero.orders);
        return out;
    }
    const Rat& a = point.value();
    for (const auto& [eps, psi] : smith_mcmillan(G).fractions)
        out.orders.push_back(eps.root_multiplicity(a) - psi.root_multiplicity(a));
    std::sort(out.orders.begin(), out.orders.end());
    return out;
}

LocalStructure local_structure(const InvariantOrders& orders) {
    LocalStructure out;
    out.point = orders.point;
    for (int v : orders.orders) {
        if (v < 0) out.pole_mults.push_back(-v);
        if (v > 0) out.zero_mults.push_back(v);
    }
    std::sort(out.pole_mults.begin(), out.pole_mults.end());
    std::sort(out.zero_mults.begin(), out.zero_mults.end());
    return out;
}

LocalStructure local_structure(const RatMatrix& G, const Point& point) {
    return local_structure(invariant_orders(G, point));
}

std::vector<Eigenvalue> eigenvalues(const RatMatrix& G, const Region& region) {
    std::vector<Eigenvalue> out;
    const SmithMcMillan sm = smith_mcmillan(G);
    if (sm.rank() == 0) return out;
    const Poly& eps_last = sm.fractions.back().first;
    const Poly& psi_first = sm.fractions.front().second;
    const FactoredPoly f = factor_poly(eps_last);
    for (const auto& [root, mult] : f.rational_roots()) {
        (void)mult;
        if (psi_first.eval(root) != 0 && region.contains(root)) {
            Eigenvalue ev;
            ev.point = root;
            for (const auto& [eps, psi] : sm.fractions) {
                (void)psi;
                const int m = eps.root_multiplicity(root);
                if (m > 0) ev.zero_mults.push_back(m);
            }
            std::sort(ev.zero_mults.begin(), ev.zero_mults.end());
            out.push_back(std::move(ev));
        }
    }
    for (const auto& fac : f.nonlinear_factors()) {
        if (poly_gcd(fac.base, psi_first).is_constant() && region.meets_factor(fac.base)) {
            Eigenvalue ev;
            ev.symbolic = true;
            ev.factor = fac.base;
            for (const auto& [eps, psi] : sm.fractions) {
                (void)psi;
                const int m = divisor_multiplicity(eps, fac.base);
                if (m > 0) ev.zero_mults.push_back(m);
            }
            std::sort(ev.zero_mults.begin(), ev.zero_mults.end());
            out.push_back(std::move(ev));
        }
    }
    return out;
}

RatMatrix g_reversal(const RatMatrix& G, int g) {
    RatMatrix m(G.rows(), G.cols());
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) m.at(i, j) = G.at(i, j).g_reversal(g);
    return m;
}

int default_grade(const RatMatrix& G) {
    const auto [q, sp] = poly_sp_split(G);
    const auto d = q.degree();
    return d ? *d : 0;
}

RatMatrix reversal(const RatMatrix& G) { return g_reversal(G, default_grade(G)); }

bool is_defined_at(const RatMatrix& G, const Point& point) {
    if (point.is_infinity()) return G.is_proper();
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j)
            if (!G.at(i, j).defined_at(point.value())) return false;
    return true;
}

std::vector<std::vector<Rat>> eval_at(const RatMatrix& G, const Rat& x) {
    std::vector<std::vector<Rat>> m(G.rows(), std::vector<Rat>(G.cols(), Rat(0)));
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) m[i][j] = G.at(i, j).eval(x);
    return m;
}

std::size_t rank_at(const RatMatrix& G, const Rat& x) { return rank_of_constant(eval_at(G, x)); }

bool is_regular_at(const RatMatrix& G, const Point& point) {
    if (G.rows() != G.cols()) throw std::invalid_argument("regularity requires a square matrix");
    if (point.is_infinity()) return is_regular_at(g_reversal(G, 0), Point::at(Rat(0)));
    if (!is_defined_at(G, point)) return false;
    return rank_at(G, point.value()) == G.rows();
}

bool are_equivalent_in(const RatMatrix& G, const RatMatrix& H, const Region& region) {
    if (G.rows() != H.rows() || G.cols() != H.cols()) throw std::invalid_argument("dimension mismatch");
    return smith_mcmillan(G, region) == smith_mcmillan(H, region);
}

RatMatrix solve(const RatMatrix& A, const RatMatrix& B) {
    if (A.rows() != A.cols()) throw std::invalid_argument("solve requires a square matrix");
    if (A.rows() != B.rows()) throw std::invalid_argument("dimension mismatch");
    const std::size_t n = A.rows(), w = B.cols();
    // Gauss-Jordan over the fraction field on [A | B].
    std::vector<std::vector<RatFun>> m(n, std::vector<RatFun>(n + w));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = A.at(i, j);
        for (std::size_t j = 0; j < w; ++j) m[i][n + j] = B.at(i, j);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("state matrix singular");
        std::swap(m[piv], m[col]);
        const RatFun inv = RatFun{Rat(1)} / m[col][col];
        for (std::size_t j = col; j < n + w; ++j) m[col][j] = inv * m[col][j];
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            const RatFun f = m[i][col];
            for (std::size_t j = col; j < n + w; ++j) m[i][j] = m[i][j] - f * m[col][j];
        }
    }
    RatMatrix X(n, w);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < w; ++j) X.at(i, j) = m[i][n + j];
    return X;
}

RatMatrix inverse(const RatMatrix& A) { return solve(A, RatMatrix::identity(A.rows())); }

}  // namespace ratlin
