#include "ratlin/pencils.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ratlin {

namespace {

std::size_t grid_rows(const ConstMatrix& m) { return m.size(); }
std::size_t grid_cols(const ConstMatrix& m) { return m.empty() ? 0 : m[0].size(); }

void require_grid(const ConstMatrix& m, std::size_t rows, std::size_t cols, const char* name) {
    if (grid_rows(m) != rows || grid_cols(m) != cols)
        throw std::invalid_argument(std::string(name) + ": dimension mismatch");
    for (const auto& row : m)
        if (row.size() != cols) throw std::invalid_argument(std::string(name) + ": ragged matrix");
}

bool grid_is_zero(const ConstMatrix& m) {
    for (const auto& row : m)
        for (const auto& e : row)
            if (e != 0) return false;
    return true;
}

void put_block_scaled(Pencil& L, std::size_t r0, std::size_t c0, const Poly& scale, const ConstMatrix& block) {
    for (std::size_t i = 0; i < grid_rows(block); ++i)
        for (std::size_t j = 0; j < grid_cols(block); ++j) L.at(r0 + i, c0 + j) = block[i][j] * scale;
}

void add_block_scaled(Pencil& L, std::size_t r0, std::size_t c0, const Poly& scale, const ConstMatrix& block) {
    for (std::size_t i = 0; i < grid_rows(block); ++i)
        for (std::size_t j = 0; j < grid_cols(block); ++j) L.at(r0 + i, c0 + j) += block[i][j] * scale;
}

std::vector<std::size_t> index_range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v;
    for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

}  // namespace

SaadBuild saad_build(const SaadParams& params) {
    const std::size_t s = params.B.size();
    if (params.sigma.size() != s) throw std::invalid_argument("one shift per residue matrix required");
    {
        std::set<Rat> uniq(params.sigma.begin(), params.sigma.end());
        if (uniq.size() != s) throw std::invalid_argument("duplicate shift");
    }
    const std::size_t m = grid_rows(params.A0);
    require_grid(params.A0, m, m, "A0");
    require_grid(params.B0, m, m, "B0");
    for (const auto& Bi : params.B) require_grid(Bi, m, m, "B_i");

    RatMatrix G(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            G.at(i, j) = RatFun{Poly::monomial(params.A0[i][j], 1) - Poly{params.B0[i][j]}};
    for (std::size_t k = 0; k < s; ++k) {
        const Poly den = Poly::linear_root(params.sigma[k]);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                G.at(i, j) = G.at(i, j) + RatFun(Poly{params.B[k][i][j]}, den);
    }

    Pencil P(s * m + m, s * m + m);
    for (std::size_t k = 0; k < s; ++k) {
        const Poly shift = Poly::linear_root(params.sigma[k]);
        for (std::size_t i = 0; i < m; ++i) {
            P.at(k * m + i, k * m + i) = shift;
            P.at(k * m + i, s * m + i) = Poly::one();
        }
        put_block_scaled(P, s * m, k * m, Poly{Rat(-1)}, params.B[k]);
    }
    put_block_scaled(P, s * m, s * m, Poly::monomial(Rat(1), 1), params.A0);
    add_block_scaled(P, s * m, s * m, Poly{Rat(-1)}, params.B0);

    return {G, make_psm(P, index_range(0, s * m), index_range(0, s * m))};
}

SaadFullRankView saad_fullrank_view(const SaadParams& params) {
    const SaadBuild built = saad_build(params);
    const std::size_t s = params.B.size();
    const std::size_t m = grid_rows(params.A0);
    const Pencil& P = built.psm.matrix();
    Pencil M = P.submatrix(index_range(s * m, s * m + m), index_range(0, s * m + m));
    std::optional<Pencil> K1;
    if (s > 0) K1 = P.submatrix(index_range(0, s * m), index_range(0, s * m + m));
    RatMatrix N1(m, s * m + m);
    for (std::size_t k = 0; k < s; ++k) {
        const Poly den = Poly{params.sigma[k]} - Poly::monomial(Rat(1), 1);  // sigma_k - l
        for (std::size_t i = 0; i < m; ++i) N1.at(i, k * m + i) = RatFun(Poly::one(), den);
    }
    for (std::size_t i = 0; i < m; ++i) N1.at(i, s * m + i) = RatFun{Rat(1)};
    return {BlockFullRank(M, K1, std::nullopt), N1};
}

SuBaiBuild subai_build(const SuBaiParams& params) {
    if (params.D.size() < 3) throw std::invalid_argument("polynomial part must reach degree two");
    const std::size_t q = params.D.size() - 1;
    const std::size_t p = grid_rows(params.D[0]);
    const std::size_t m = grid_cols(params.D[0]);
    for (const auto& Dk : params.D) require_grid(Dk, p, m, "D_k");
    if (grid_is_zero(params.D[q])) throw std::invalid_argument("leading coefficient must be nonzero");
    const std::size_t n = grid_rows(params.A);
    require_grid(params.A, n, n, "A");
    require_grid(params.B, n, m, "B");
    require_grid(params.C, p, n, "C");

    // G = sum D_k l^k + C (l I - A)^-1 B.
    RatMatrix G(p, m);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<Rat> coeffs(q + 1);
            for (std::size_t k = 0; k <= q; ++k) coeffs[k] = params.D[k][i][j];
            G.at(i, j) = RatFun{Poly{coeffs}};
        }
    RatMatrix state_inv_B;
    if (n > 0) {
        PolyMatrix lIA(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                lIA.at(i, j) = -Rat(1) * Poly{params.A[i][j]};
                if (i == j) lIA.at(i, j) += Poly::monomial(Rat(1), 1);
            }
        state_inv_B = solve(RatMatrix::from_poly(lIA), RatMatrix::from_poly(PolyMatrix::constant(params.B)));
        G = G + RatMatrix::from_poly(PolyMatrix::constant(params.C)) * state_inv_B;
    }

    // Pencil rows: p | (q-1) m-blocks | n; columns: q m-blocks | n.
    const std::size_t rows = p + (q - 1) * m + n;
    const std::size_t cols = q * m + n;
    Pencil L(rows, cols);
    put_block_scaled(L, 0, 0, Poly::monomial(Rat(1), 1), params.D[q]);
    add_block_scaled(L, 0, 0, Poly::one(), params.D[q - 1]);
    for (std::size_t j = 1; j < q; ++j) put_block_scaled(L, 0, j * m, Poly::one(), params.D[q - 1 - j]);
    put_block_scaled(L, 0, q * m, Poly{Rat(-1)}, params.C);
    for (std::size_t t = 0; t + 1 < q; ++t) {
        for (std::size_t i = 0; i < m; ++i) {
            L.at(p + t * m + i, t * m + i) = Poly{Rat(-1)};
            L.at(p + t * m + i, (t + 1) * m + i) = Poly::monomial(Rat(1), 1);
        }
    }
    if (n > 0) {
        put_block_scaled(L, p + (q - 1) * m, (q - 1) * m, Poly::one(), params.B);
        put_block_scaled(L, p + (q - 1) * m, q * m, Poly{Rat(-1)}, params.A);
        for (std::size_t i = 0; i < n; ++i) L.at(p + (q - 1) * m + i, q * m + i) += Poly::monomial(Rat(1), 1);
    }

    // Wide state submatrix: every row but the first block, every column except
    // the next-to-last block column.
    std::vector<std::size_t> state_rows = index_range(p, rows);
    std::vector<std::size_t> state_cols = index_range(0, (q - 1) * m);
    for (std::size_t j = q * m; j < cols; ++j) state_cols.push_back(j);
    SystemMatrix psm(L, state_rows, state_cols);

    Pencil M = L.submatrix(index_range(0, p), index_range(0, cols));
    Pencil K1 = L.submatrix(index_range(p, rows), index_range(0, cols));
    BlockFullRank view(M, K1, std::nullopt);

    RatMatrix N1(m, cols);
    for (std::size_t j = 0; j < q; ++j) {
        const Poly mono = Poly::monomial(Rat(1), static_cast<int>(q - 1 - j));
        for (std::size_t i = 0; i < m; ++i) N1.at(i, j * m + i) = RatFun{mono};
    }
    if (n > 0) {
        const RatMatrix tail = state_inv_B.transpose();  // m x n
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) N1.at(i, q * m + j) = -tail.at(i, j);
    }

    return {G, L, psm, view, N1};
}

Poly NleigsParams::scaled_pole_factor(std::size_t i) const {
    if (i < 1 || i > order()) throw std::out_of_range("pole factor index");
    const Rat& b = beta.at(i);
    const Point& pole = xi.at(i - 1);
    if (pole.is_infinity()) return Poly{b};
    return Poly{{b, -b / pole.value()}};  // b * (1 - l/xi)
}

Poly NleigsParams::node_factor(std::size_t j) const {
    if (j >= order()) throw std::out_of_range("node factor index");
    return Poly::linear_root(sigma.at(j));
}

std::size_t NleigsParams::infinite_pole_count() const {
    std::size_t c = 0;
    for (const Point& p : xi)
        if (p.is_infinity()) ++c;
    return c;
}

std::vector<Rat> NleigsParams::finite_poles(std::size_t upto) const {
    std::set<Rat> set;
    for (std::size_t i = 0; i < std::min(upto, xi.size()); ++i)
        if (!xi[i].is_infinity()) set.insert(xi[i].value());
    return {set.begin(), set.end()};
}

bool NleigsParams::poles_distinct_from_nodes() const {
    for (const Point& p : xi) {
        if (p.is_infinity()) continue;
        for (const Rat& s : sigma)
            if (p.value() == s) return false;
    }
    return true;
}

void NleigsParams::validate() const {
    const std::size_t N = order();
    if (N == 0) throw std::invalid_argument("at least one node required");
    if (xi.size() != N) throw std::invalid_argument("one pole per node required");
    if (beta.size() != N + 1) throw std::invalid_argument("scaling list must have one extra entry");
    for (const Rat& b : beta)
        if (b == 0) throw std::invalid_argument("zero scaling parameter");
    for (const Point& p : xi)
        if (!p.is_infinity() && p.value() == 0) throw std::invalid_argument("zero pole");
}

RatFun nleigs_b(const NleigsParams& params, std::size_t i) {
    params.validate();
    if (i > params.order()) throw std::out_of_range("basis function index");
    RatFun b = RatFun(Poly::one(), Poly{params.beta[0]});
    for (std::size_t k = 1; k <= i; ++k)
        b = b * RatFun(params.node_factor(k - 1), params.scaled_pole_factor(k));
    return b;
}

namespace {

struct NleigsShape {
    std::size_t N = 0, m = 0;
    Poly gN_over_betaN;      // (1 - l/xi_N)
    Poly hN1_over_betaN;     // (l - sigma_{N-1}) / beta_N
};

NleigsShape nleigs_shape(const NleigsParams& params, std::size_t m) {
    NleigsShape s;
    s.N = params.order();
    s.m = m;
    const Rat inv_bN = Rat(1) / params.beta[s.N];
    s.gN_over_betaN = inv_bN * params.scaled_pole_factor(s.N);
    s.hN1_over_betaN = inv_bN * params.node_factor(s.N - 1);
    return s;
}

RatFun transfer_product(const NleigsParams& params, std::size_t j) {
    // prod_{k=j+1..N} g_k / h_{k-1}
    RatFun acc{Rat(1)};
    for (std::size_t k = j + 1; k <= params.order(); ++k)
        acc = acc * RatFun(params.scaled_pole_factor(k), params.node_factor(k - 1));
    return acc;
}

RatMatrix scaled_const(const ConstMatrix& mat, const RatFun& s) {
    RatMatrix out(grid_rows(mat), grid_cols(mat));
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out.at(i, j) = s * RatFun{mat[i][j]};
    return out;
}

}  // namespace

NleigsBuild nleigs_build(const NleigsBasic& basic) {
    const NleigsParams& prm = basic.params;
    prm.validate();
    const std::size_t N = prm.order();
    if (basic.D.size() != N + 1) throw std::invalid_argument("one coefficient matrix per basis function required");
    const std::size_t m = grid_rows(basic.D[0]);
    for (const auto& Dk : basic.D) require_grid(Dk, m, m, "D_k");

    RatMatrix Q(m, m);
    for (std::size_t i = 0; i <= N; ++i) {
        const RatFun bi = nleigs_b(prm, i);
        Q = Q + scaled_const(basic.D[i], bi);
    }

    const NleigsShape shape = nleigs_shape(prm, m);
    Pencil L(N * m, N * m);
    for (std::size_t j = 0; j + 1 < N; ++j) put_block_scaled(L, 0, j * m, shape.gN_over_betaN, basic.D[j]);
    put_block_scaled(L, 0, (N - 1) * m, shape.gN_over_betaN, basic.D[N - 1]);
    add_block_scaled(L, 0, (N - 1) * m, shape.hN1_over_betaN, basic.D[N]);
    for (std::size_t j = 0; j + 1 < N; ++j) {
        const Poly h = prm.node_factor(j);
        const Poly g = prm.scaled_pole_factor(j + 1);
        for (std::size_t i = 0; i < m; ++i) {
            L.at(m + j * m + i, j * m + i) = -Rat(1) * h;
            L.at(m + j * m + i, (j + 1) * m + i) = g;
        }
    }

    SystemMatrix psm(L, index_range(m, N * m), index_range(m, N * m));

    Pencil M = L.submatrix(index_range(0, m), index_range(0, N * m));
    std::optional<Pencil> K;
    if (N > 1) K = L.submatrix(index_range(m, N * m), index_range(0, N * m));
    BlockFullRank view(M, K, std::nullopt);

    RatMatrix NN(m, N * m);
    const RatFun scale = RatFun(Poly{prm.beta[N]}, prm.scaled_pole_factor(N));  // 1 / (1 - l/xi_N)
    for (std::size_t j = 0; j < N; ++j) {
        const RatFun bj = scale * nleigs_b(prm, j);
        for (std::size_t i = 0; i < m; ++i) NN.at(i, j * m + i) = bj;
    }

    return {Q, L, psm, view, NN};
}

RatMatrix nleigs_RN(const NleigsBasic& basic) {
    const NleigsParams& prm = basic.params;
    prm.validate();
    const std::size_t N = prm.order();
    if (basic.D.size() != N + 1) throw std::invalid_argument("one coefficient matrix per basis function required");
    const std::size_t m = grid_rows(basic.D[0]);
    RatMatrix R(m, m);
    for (std::size_t j = 1; j < N; ++j) R = R + scaled_const(basic.D[j], transfer_product(prm, j));
    R = R + scaled_const(basic.D[N], RatFun{Rat(1)});
    return R;
}

namespace {

Region nleigs_upgraded_region(const NleigsParams& prm, bool criterion_holds) {
    const std::size_t N = prm.order();
    if (criterion_holds) {
        if (prm.xi[N - 1].is_infinity()) return Region::all();
        return Region::except({prm.xi[N - 1].value()});
    }
    return Region::except(prm.finite_poles(N));
}

std::string nleigs_caveat(const NleigsParams& prm) {
    const std::size_t N = prm.order();
    if (prm.xi[N - 1].is_infinity()) return "";
    return "pole structure at " + rat_to_string(prm.xi[N - 1].value()) +
           " is not visible with this state choice";
}

}  // namespace

MinimalityCertificate nleigs_minimality(const NleigsBasic& basic) {
    const NleigsParams& prm = basic.params;
    prm.validate();
    if (!prm.poles_distinct_from_nodes())
        throw std::invalid_argument("pole coincides with an interpolation node");
    const std::size_t N = prm.order();
    const std::size_t m = grid_rows(basic.D[0]);
    const RatMatrix R = nleigs_RN(basic);

    MinimalityCertificate cert;
    bool all_ok = true;
    std::ostringstream bad;
    for (const Rat& pole : prm.finite_poles(N - 1)) {
        PoleReport rep;
        rep.pole = pole;
        rep.ok = rank_at(R, pole) == m;
        if (!rep.ok) {
            all_ok = false;
            bad << (bad.str().empty() ? "" : ", ") << rat_to_string(pole);
        }
        cert.per_pole.push_back(rep);
    }
    cert.verdict = all_ok ? Verdict::yes() : Verdict::no("criterion matrix singular at " + bad.str());
    cert.certified_region = nleigs_upgraded_region(prm, all_ok);
    cert.caveat = nleigs_caveat(prm);
    return cert;
}

SmithForm nleigs_pole_structure(const NleigsBasic& basic) {
    const NleigsParams& prm = basic.params;
    prm.validate();
    if (!prm.poles_distinct_from_nodes())
        throw std::invalid_argument("pole coincides with an interpolation node");
    const std::size_t N = prm.order();
    const std::size_t m = grid_rows(basic.D[0]);
    SmithForm out;
    out.rows = (N - 1) * m;
    out.cols = (N - 1) * m;
    if (N == 1) return out;
    Poly p = Poly::one();
    for (std::size_t i = 0; i + 1 < N; ++i) {
        if (!prm.xi[i].is_infinity()) p = p * Poly::linear_root(prm.xi[i].value());
    }
    out.invariants.assign((N - 2) * m, Poly::one());
    for (std::size_t k = 0; k < m; ++k) out.invariants.push_back(p);
    return out;
}

NleigsLowRankBuild nleigs_lowrank_build(const NleigsLowRank& lr) {
    const NleigsParams& prm = lr.params;
    prm.validate();
    const std::size_t N = prm.order();
    const std::size_t p = lr.split;
    const std::size_t r = lr.rank;
    if (N < 2) throw std::invalid_argument("at least two nodes required");
    if (p + 2 > N) throw std::invalid_argument("split index too large for the pencil shape");
    if (lr.Dt.size() != p + 1) throw std::invalid_argument("full-rank coefficient count mismatch");
    if (lr.Lt.size() != N - p) throw std::invalid_argument("low-rank coefficient count mismatch");
    const std::size_t m = grid_rows(lr.Dt[0]);
    if (r > m) throw std::invalid_argument("low-rank width exceeds matrix size");
    for (const auto& Dk : lr.Dt) require_grid(Dk, m, m, "D~_k");
    for (const auto& Lk : lr.Lt) require_grid(Lk, m, r, "L~_k");
    require_grid(lr.Ut, m, r, "U~");

    const RatMatrix UtT = RatMatrix::from_poly(PolyMatrix::constant(lr.Ut)).transpose();

    RatMatrix Q(m, m);
    for (std::size_t i = 0; i <= p; ++i) Q = Q + scaled_const(lr.Dt[i], nleigs_b(prm, i));
    for (std::size_t i = p + 1; i <= N; ++i)
        Q = Q + scaled_const(lr.Lt[i - p - 1], nleigs_b(prm, i)) * UtT;

    // Column blocks: p+1 of width m, then N-1-p of width r.
    const std::size_t cols = (p + 1) * m + (N - 1 - p) * r;
    auto col_off = [&](std::size_t blk) { return blk <= p ? blk * m : (p + 1) * m + (blk - p - 1) * r; };
    const std::size_t rows = m + p * m + (N - 1 - p) * r;
    const NleigsShape shape = nleigs_shape(prm, m);

    Pencil L(rows, cols);
    for (std::size_t j = 0; j <= p; ++j) put_block_scaled(L, 0, col_off(j), shape.gN_over_betaN, lr.Dt[j]);
    for (std::size_t j = p + 1; j + 1 < N; ++j)
        put_block_scaled(L, 0, col_off(j), shape.gN_over_betaN, lr.Lt[j - p - 1]);
    put_block_scaled(L, 0, col_off(N - 1), shape.gN_over_betaN, lr.Lt[N - 1 - p - 1]);
    add_block_scaled(L, 0, col_off(N - 1), shape.hN1_over_betaN, lr.Lt[N - p - 1]);

    std::size_t row_off = m;
    for (std::size_t j = 0; j < p; ++j) {
        const Poly h = prm.node_factor(j);
        const Poly g = prm.scaled_pole_factor(j + 1);
        for (std::size_t i = 0; i < m; ++i) {
            L.at(row_off + i, col_off(j) + i) = -Rat(1) * h;
            L.at(row_off + i, col_off(j + 1) + i) = g;
        }
        row_off += m;
    }
    {
        // Coupling row: -h_p U~^T | g_{p+1} I_r.
        const Poly h = prm.node_factor(p);
        const Poly g = prm.scaled_pole_factor(p + 1);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < m; ++j) L.at(row_off + i, col_off(p) + j) = -lr.Ut[j][i] * h;
            L.at(row_off + i, col_off(p + 1) + i) = g;
        }
        row_off += r;
    }
    for (std::size_t j = p + 1; j + 1 < N; ++j) {
        const Poly h = prm.node_factor(j);
        const Poly g = prm.scaled_pole_factor(j + 1);
        for (std::size_t i = 0; i < r; ++i) {
            L.at(row_off + i, col_off(j) + i) = -Rat(1) * h;
            L.at(row_off + i, col_off(j + 1) + i) = g;
        }
        row_off += r;
    }

    SystemMatrix psm(L, index_range(m, rows), index_range(m, cols));

    Pencil M = L.submatrix(index_range(0, m), index_range(0, cols));
    Pencil K = L.submatrix(index_range(m, rows), index_range(0, cols));
    BlockFullRank view(M, K, std::nullopt);

    RatMatrix NN(m, cols);
    const RatFun scale = RatFun(Poly{prm.beta[N]}, prm.scaled_pole_factor(N));
    for (std::size_t j = 0; j <= p; ++j) {
        const RatFun bj = scale * nleigs_b(prm, j);
        for (std::size_t i = 0; i < m; ++i) NN.at(i, col_off(j) + i) = bj;
    }
    for (std::size_t j = p + 1; j < N; ++j) {
        const RatFun bj = scale * nleigs_b(prm, j);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t c = 0; c < r; ++c) NN.at(i, col_off(j) + c) = bj * RatFun{lr.Ut[i][c]};
    }

    return {Q, L, psm, view, NN};
}

RatMatrix nleigs_lowrank_RN1(const NleigsLowRank& lr) {
    const NleigsParams& prm = lr.params;
    const std::size_t N = prm.order();
    const std::size_t p = lr.split;
    if (p == 0) throw std::invalid_argument("full criterion needs a positive split index");
    const std::size_t m = grid_rows(lr.Dt[0]);
    RatMatrix acc(m, m);
    for (std::size_t j = 1; j < p; ++j) {
        RatFun prod{Rat(1)};
        for (std::size_t k = j + 1; k <= p; ++k)
            prod = prod * RatFun(prm.scaled_pole_factor(k), prm.node_factor(k - 1));
        acc = acc + scaled_const(lr.Dt[j], prod);
    }
    acc = acc + scaled_const(lr.Dt[p], RatFun{Rat(1)});
    const RatFun outer = RatFun(prm.scaled_pole_factor(N), prm.node_factor(N - 1));
    return outer * acc;
}

RatMatrix nleigs_lowrank_RN2(const NleigsLowRank& lr) {
    const NleigsParams& prm = lr.params;
    const std::size_t N = prm.order();
    const std::size_t p = lr.split;
    const std::size_t m = grid_rows(lr.Dt[0]);
    const std::size_t r = lr.rank;
    RatMatrix acc(m, r);
    for (std::size_t j = p + 1; j < N; ++j) acc = acc + scaled_const(lr.Lt[j - p - 1], transfer_product(prm, j));
    acc = acc + scaled_const(lr.Lt[N - p - 1], RatFun{Rat(1)});
    return acc;
}

RatMatrix nleigs_lowrank_RN(const NleigsLowRank& lr) {
    const NleigsParams& prm = lr.params;
    const std::size_t N = prm.order();
    const std::size_t p = lr.split;
    const std::size_t m = grid_rows(lr.Dt[0]);
    const std::size_t r = lr.rank;
    const RatMatrix R1 = nleigs_lowrank_RN1(lr);
    const RatMatrix R2 = nleigs_lowrank_RN2(lr);

    RatMatrix R(2 * m + r, m + r);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) R.at(i, j) = R1.at(i, j);
        for (std::size_t j = 0; j < r; ++j) R.at(i, m + j) = R2.at(i, j);
    }
    RatFun block21{Rat(1)};
    for (std::size_t i = 1; i < p; ++i)
        block21 = block21 * RatFun(prm.scaled_pole_factor(i), prm.node_factor(i));
    block21 = block21 * RatFun{prm.scaled_pole_factor(p)};
    for (std::size_t i = 0; i < m; ++i) R.at(m + i, i) = block21;
    const RatFun mh_p = RatFun{-Rat(1) * prm.node_factor(p)};
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m; ++j) R.at(2 * m + i, j) = mh_p * RatFun{lr.Ut[j][i]};
    RatFun block32{Rat(1)};
    for (std::size_t i = p + 1; i + 1 < N; ++i)
        block32 = block32 * RatFun(prm.scaled_pole_factor(i), prm.node_factor(i));
    block32 = block32 * RatFun{prm.scaled_pole_factor(N - 1)};
    for (std::size_t i = 0; i < r; ++i) R.at(2 * m + i, m + i) = block32;
    return R;
}

LowRankMinimalityCertificate nleigs_lowrank_minimality(const NleigsLowRank& lr) {
    const NleigsParams& prm = lr.params;
    prm.validate();
    if (!prm.poles_distinct_from_nodes())
        throw std::invalid_argument("pole coincides with an interpolation node");
    const std::size_t m = grid_rows(lr.Dt[0]);
    const std::size_t r = lr.rank;
    if (rank_of_constant(lr.Ut) != r) throw std::invalid_argument("low-rank factor is rank deficient");
    const std::size_t N = prm.order();
    const std::size_t p = lr.split;

    bool prefix_infinite = true;
    for (std::size_t i = 0; i < p; ++i)
        if (!prm.xi[i].is_infinity()) prefix_infinite = false;

    LowRankMinimalityCertificate cert;
    const std::vector<Rat> poles = prm.finite_poles(N - 1);

    bool all_ok = true;
    std::ostringstream bad;
    if (p == 0) {
        // No full-rank block: the reduced column criterion is the exact one.
        const RatMatrix R2 = nleigs_lowrank_RN2(lr);
        for (const Rat& pole : poles) {
            PoleReport rep{pole, rank_at(R2, pole) == r};
            if (!rep.ok) {
                all_ok = false;
                bad << (bad.str().empty() ? "" : ", ") << rat_to_string(pole);
            }
            cert.per_pole.push_back(rep);
        }
        cert.simplified_criterion = all_ok;
        cert.square_test_sufficient = false;
    } else {
        const RatMatrix R = nleigs_lowrank_RN(lr);
        for (const Rat& pole : poles) {
            PoleReport rep{pole, rank_at(R, pole) == m + r};
            if (!rep.ok) {
                all_ok = false;
                bad << (bad.str().empty() ? "" : ", ") << rat_to_string(pole);
            }
            cert.per_pole.push_back(rep);
        }
        if (prefix_infinite) {
            const RatMatrix R2 = nleigs_lowrank_RN2(lr);
            bool simp = true;
            for (const Rat& pole : poles) simp = simp && rank_at(R2, pole) == r;
            cert.simplified_criterion = simp;
        }
        // Sufficient square test: drop the second block row.
        std::vector<std::size_t> keep = index_range(0, m);
        for (std::size_t i = 2 * m; i < 2 * m + r; ++i) keep.push_back(i);
        const RatMatrix Rhat = R.submatrix(keep, index_range(0, m + r));
        bool square_ok = true;
        for (const Rat& pole : poles) square_ok = square_ok && rank_at(Rhat, pole) == m + r;
        cert.square_test_sufficient = square_ok;
    }

    cert.verdict = all_ok ? Verdict::yes() : Verdict::no("criterion matrix rank deficient at " + bad.str());
    cert.certified_region = nleigs_upgraded_region(prm, all_ok);
    cert.caveat = nleigs_caveat(prm);
    return cert;
}

}  // namespace ratlin
