// Acceptance suite: one pass/fail line per criterion, exact arithmetic, zero
// tolerance. Exit status is nonzero when any criterion fails.

#include "ratlin/io.hpp"
#include "ratlin/linearize.hpp"
#include "ratlin/pencils.hpp"

#include <functional>
#include <optional>
#include <iostream>
#include <random>
#include <sstream>

using namespace ratlin;

namespace {

struct Checker {
    bool all_ok = true;

    void run(int number, const std::string& what, const std::function<void()>& body) {
        try {
            body();
            std::cout << "PASS criterion " << number << ": " << what << "\n";
        } catch (const std::exception& e) {
            all_ok = false;
            std::cout << "FAIL criterion " << number << ": " << what << " -- " << e.what() << "\n";
        }
    }
};

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

class Rng {
  public:
    explicit Rng(unsigned seed) : gen_(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    Rat rat(int span = 3) {
        const int num = uniform(-span, span);
        const int den = uniform(0, 3) == 0 ? uniform(1, 2) : 1;
        return Rat(num, den);
    }
    Poly poly(int max_deg, int span = 3) {
        const int d = uniform(0, max_deg);
        std::vector<Rat> c(static_cast<std::size_t>(d) + 1);
        for (auto& x : c) x = rat(span);
        return Poly{c};
    }
    Poly nonzero_poly(int max_deg) {
        for (;;) {
            Poly p = poly(max_deg);
            if (!p.is_zero()) return p;
        }
    }
    RatFun ratfun(int max_deg = 3) { return {poly(max_deg), nonzero_poly(2)}; }
    PolyMatrix polymatrix(std::size_t rows, std::size_t cols, int max_deg) {
        PolyMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = poly(max_deg);
        return m;
    }
    RatMatrix ratmatrix(std::size_t rows, std::size_t cols, int max_deg = 2) {
        RatMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = ratfun(max_deg);
        return m;
    }
    ConstMatrix constmatrix(std::size_t rows, std::size_t cols, int span = 2) {
        ConstMatrix m(rows, std::vector<Rat>(cols));
        for (auto& row : m)
            for (auto& e : row) e = rat(span);
        return m;
    }
    ConstMatrix full_rank_constmatrix(std::size_t rows, std::size_t cols) {
        for (;;) {
            ConstMatrix m = constmatrix(rows, cols);
            if (rank_of_constant(m) == std::min(rows, cols)) return m;
        }
    }
    SystemMatrix psm(std::size_t n, std::size_t p, std::size_t m, int max_deg) {
        for (;;) {
            PolyMatrix P(n + p, n + m);
            for (std::size_t i = 0; i < P.rows(); ++i)
                for (std::size_t j = 0; j < P.cols(); ++j) P.at(i, j) = poly(max_deg);
            std::vector<std::size_t> sr, sc;
            for (std::size_t i = 0; i < n; ++i) {
                sr.push_back(i);
                sc.push_back(i);
            }
            try {
                return make_psm(P, sr, sc);
            } catch (const std::invalid_argument&) {
            }
        }
    }

  private:
    std::mt19937 gen_;
};

RatMatrix example2x2() {
    return io::parse_ratmatrix_text(
        "ratmatrix 2 2\n"
        "l^2+l-1 / l ; -1 / l\n"
        "-1 ; -l^2+l-2\n");
}

SystemMatrix pencil4x4() {
    return io::parse_psm_text(
        "polymatrix 4 4\n"
        "l ; 0 ; 1 ; 1\n"
        "0 ; 1 ; 0 ; l\n"
        "1 ; 0 ; l+1 ; 0\n"
        "l ; l ; 0 ; l-1\n"
        "staterows: 1 2\n"
        "statecols: 1 2\n");
}

ConstMatrix ident(std::size_t n) {
    ConstMatrix m(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Rat(1);
    return m;
}

NleigsParams random_nleigs_params(Rng& rng, std::size_t N) {
    NleigsParams p;
    for (std::size_t i = 0; i < N; ++i) p.sigma.push_back(Rat(static_cast<int>(i)));
    for (std::size_t i = 0; i < N; ++i) {
        if (rng.uniform(0, 2) == 0) {
            p.xi.push_back(Point::infinity());
        } else {
            p.xi.push_back(Point::at(Rat(rng.uniform(1, 4) + static_cast<int>(N))));
        }
    }
    for (std::size_t i = 0; i <= N; ++i) p.beta.push_back(Rat(rng.uniform(1, 3)));
    return p;
}

void check_fullrank_certificate(const BlockFullRank& view, const RatMatrix& dual, std::size_t rows) {
    const auto cert = linearization_region(view, dual, RatMatrix::identity(rows));
    SystemMatrix empty_state(view.assembled(), {}, {});
    LinearizationClaim claim(empty_state, cert.target);
    const Verdict v = is_linearization_in(claim, cert.region);
    require(v.holds, "fullrank certificate rejected: " + v.witness);
}

// ---- criteria -------------------------------------------------------------

void criterion1() {
    Rng rng(1001);
    int done = 0;
    while (done < 200) {
        const std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 5));
        const std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 5));
        const PolyMatrix m = rng.polymatrix(rows, cols, 4);
        require(smith_form(m) == smith_via_minors(m), "smith routes disagree");
        ++done;
    }
}

void criterion2() {
    const RatMatrix g = example2x2();
    const SystemMatrix pencil = pencil4x4();

    const InvariantOrders direct = invariant_orders(g, Point::infinity());
    require(direct.orders == std::vector<int>{-2, -1}, "orders at infinity via the matrix");

    const InvariantOrders recovered = recover_infinite_orders(pencil, 1);
    require(recovered.orders == std::vector<int>{-2, -1}, "orders at infinity via the pencil");

    const LocalStructure at0 = local_structure(g, Point::at(Rat(0)));
    require(at0.pole_mults == std::vector<int>{1}, "pole divisor at 0 via the matrix");
    require(at0.zero_mults.empty(), "no zero at 0");

    const PsmStructureReport rep = structure_at(pencil, Rat(0));
    require(rep.pole_eds == std::vector<int>{1}, "pole divisor at 0 via the pencil");
    require(rep.zero_eds.empty(), "no zero divisor at 0 via the pencil");

    require(is_strongly_minimal(pencil), "pencil strongly minimal");
    require(transfer_function(pencil) == g, "transfer identity");
}

void criterion3() {
    Rng rng(1003);
    int done = 0;
    while (done < 100) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
        const SystemMatrix psm = rng.psm(n, 2, 2, 1);
        const Rat a = rng.rat();
        if (!is_minimal_at(psm, a)) continue;
        const PsmStructureReport rep = structure_at(psm, a);
        const LocalStructure ls = local_structure(transfer_function(psm), Point::at(a));
        require(rep.pole_eds == ls.pole_mults && rep.zero_eds == ls.zero_mults,
                "pointwise structure mismatch");
        ++done;
    }
}

void criterion4() {
    Rng rng(1004);
    int done = 0;
    while (done < 100) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
        const SystemMatrix psm = rng.psm(n, 2, 2, 1);
        if (!is_minimal_at_infinity(psm)) continue;
        const InvariantOrders via_pencil = structure_at_infinity(psm);
        const InvariantOrders direct = invariant_orders(transfer_function(psm), Point::infinity());
        require(via_pencil.orders == direct.orders, "orders at infinity mismatch");
        ++done;
    }
}

void criterion5() {
    Rng rng(1005);
    int done = 0;
    while (done < 200) {
        RatMatrix g;
        if (rng.uniform(0, 1) == 0) {
            g = RatMatrix(1, 1);
            g.at(0, 0) = rng.ratfun();
        } else {
            g = rng.ratmatrix(2, 2);
        }
        if (normal_rank(g) == 0) continue;
        const int grade = rng.uniform(-3, 3);
        const auto at_inf = invariant_orders(g, Point::infinity()).orders;
        const auto at_zero = invariant_orders(g_reversal(g, grade), Point::at(Rat(0))).orders;
        require(at_inf.size() == at_zero.size(), "rank changed under reversal");
        for (std::size_t i = 0; i < at_inf.size(); ++i)
            require(at_zero[i] == at_inf[i] + grade, "shifted orders mismatch");
        ++done;
    }
}

void criterion6() {
    Rng rng(1006);

    // Transfer identity on random instances.
    for (int k = 0; k < 5; ++k) {
        SaadParams p;
        p.A0 = rng.constmatrix(2, 2);
        p.B0 = rng.constmatrix(2, 2);
        p.B = {rng.constmatrix(2, 2), rng.constmatrix(2, 2)};
        p.sigma = {Rat(0), Rat(1)};
        const SaadBuild built = saad_build(p);
        require(transfer_function(built.psm) == built.G, "transfer identity");
    }

    // Minimality everywhere iff every residue matrix is invertible.
    for (int k = 0; k < 10; ++k) {
        SaadParams p;
        p.A0 = rng.constmatrix(2, 2);
        p.B0 = rng.constmatrix(2, 2);
        p.sigma = {Rat(0), Rat(1)};
        const bool want_singular = k % 2 == 0;
        p.B.push_back(rng.full_rank_constmatrix(2, 2));
        if (want_singular) {
            ConstMatrix b{{Rat(1), Rat(0)}, {rng.rat(), Rat(0)}};
            p.B.push_back(b);
        } else {
            p.B.push_back(rng.full_rank_constmatrix(2, 2));
        }
        const SaadBuild built = saad_build(p);
        bool all_invertible = true;
        for (const auto& b : p.B) all_invertible = all_invertible && rank_of_constant(b) == 2;
        require(is_minimal_in(built.psm, Region::all()) == all_invertible,
                "minimality vs residue invertibility");
        require(is_minimal_in(built.psm, Region::except({Rat(0), Rat(1)})), "minimal away from shifts");
    }

    // Eigenvalues of the pencil away from the shifts match the zeros of G.
    {
        SaadParams p;
        p.A0 = {{Rat(1)}};
        p.B0 = {{Rat(0)}};
        p.B = {{{Rat(-1)}}};
        p.sigma = {Rat(0)};
        const SaadBuild built = saad_build(p);
        // G = l - 1/l = (l^2-1)/l: zeros at 1 and -1.
        const Region sigma_free = Region::except({Rat(0)});
        const auto evs_g = eigenvalues(built.G, sigma_free);
        const auto evs_p = eigenvalues(RatMatrix::from_poly(built.psm.matrix()), sigma_free);
        require(evs_g.size() == 2 && evs_p.size() == 2, "eigenvalue counts");
        for (std::size_t i = 0; i < evs_g.size(); ++i) {
            require(!evs_g[i].symbolic && !evs_p[i].symbolic, "rational eigenvalues expected");
            require(evs_g[i].point == evs_p[i].point, "eigenvalue location mismatch");
            require(evs_g[i].zero_mults == evs_p[i].zero_mults, "partial multiplicity mismatch");
        }
        // Pointwise divisor agreement read off the system matrix.
        for (const auto& ev : evs_g) {
            const auto rep = structure_at(built.psm, ev.point);
            require(rep.zero_eds == ev.zero_mults, "divisors via the pencil");
        }
    }

    // Random instances: every rational zero of G away from the shifts carries
    // identical divisor lists in the pencil.
    for (int k = 0; k < 5; ++k) {
        SaadParams p;
        p.A0 = rng.constmatrix(2, 2);
        p.B0 = rng.constmatrix(2, 2);
        p.B = {rng.constmatrix(2, 2)};
        p.sigma = {Rat(0)};
        const SaadBuild built = saad_build(p);
        const auto sm = smith_mcmillan(built.G);
        if (sm.rank() == 0) continue;
        for (const auto& [root, mult] : factor_poly(sm.fractions.back().first).rational_roots()) {
            (void)mult;
            if (root == Rat(0)) continue;
            const auto rep = structure_at(built.psm, root);
            const auto ls = local_structure(built.G, Point::at(root));
            require(rep.zero_eds == ls.zero_mults, "random instance divisor mismatch");
        }
    }

    // Grade-1 claim at infinity, via the system matrix and the full rank partition.
    {
        const SaadParams p{{{Rat(1)}}, {{Rat(0)}}, {{{Rat(1)}}}, {Rat(0)}};
        const SaadBuild built = saad_build(p);
        LinearizationClaim claim(built.psm, built.G);
        require(is_linearization_at_infinity(claim, 1).holds, "grade-1 claim via the system matrix");
        const SaadFullRankView view = saad_fullrank_view(p);
        const auto gv =
            linearization_at_infinity_grade(view.view, view.dual_basis, RatMatrix::identity(1), 0, 0);
        require(gv.verdict.holds && gv.grade == 1, "grade-1 claim via the full rank partition");
    }
}

void criterion7() {
    Rng rng(1007);
    const std::size_t q = 3, ssize = 2, m = 2, p_dim = 2;
    SuBaiParams p;
    for (std::size_t k = 0; k <= q; ++k) p.D.push_back(rng.constmatrix(p_dim, m));
    if (rank_of_constant(p.D[q]) == 0) p.D[q] = ident(2);
    p.A = {{Rat(1), Rat(0)}, {Rat(1), Rat(2)}};  // eigenvalues 1 and 2
    p.B = rng.constmatrix(ssize, m);
    p.C = rng.constmatrix(p_dim, ssize);
    // Keep the realization minimal: columns/rows of B and C nonzero.
    p.B = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    p.C = {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    const SuBaiBuild built = subai_build(p);

    require(transfer_function(built.psm_full_state) == built.G, "transfer identity with the wide state");

    // Closed-form last two block columns of the state inverse.
    const RatMatrix Ainv = inverse(RatMatrix::from_poly(built.psm_full_state.state_matrix()));
    PolyMatrix lIA(ssize, ssize);
    for (std::size_t i = 0; i < ssize; ++i)
        for (std::size_t j = 0; j < ssize; ++j) {
            lIA.at(i, j) = Rat(-1) * Poly{p.A[i][j]};
            if (i == j) lIA.at(i, j) += Poly::monomial(Rat(1), 1);
        }
    const RatMatrix tail = inverse(RatMatrix::from_poly(lIA));
    // Next-to-last block column: [-l^{q-2} I; ...; -l I; -I; 0].
    for (std::size_t blk = 0; blk + 1 < q; ++blk) {
        const Poly expect = Rat(-1) * Poly::monomial(Rat(1), static_cast<int>(q - 2 - blk));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const RatFun want = i == j ? RatFun{expect} : RatFun{};
                require(Ainv.at(blk * m + i, (q - 2) * m + j) == want, "monomial block column");
            }
    }
    for (std::size_t i = 0; i < ssize; ++i)
        for (std::size_t j = 0; j < m; ++j)
            require(Ainv.at((q - 1) * m + i, (q - 2) * m + j).is_zero(), "zero tail under the monomials");
    for (std::size_t i = 0; i < ssize; ++i)
        for (std::size_t j = 0; j < ssize; ++j)
            require(Ainv.at((q - 1) * m + i, (q - 1) * m + j) == tail.at(i, j), "resolvent block column");
    for (std::size_t blk = 0; blk + 1 < q; ++blk)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < ssize; ++j)
                require(Ainv.at(blk * m + i, (q - 1) * m + j).is_zero(), "zeros above the resolvent");

    // Duality and the certified region (state eigenvalues 1 and 2 are rational).
    require(built.fullrank_view.k1().has_value(), "lower block present");
    require(check_duality({RatMatrix::from_poly(*built.fullrank_view.k1()), built.dual_basis}),
            "duality of the one-block-column partition");
    const auto cert = linearization_region(built.fullrank_view, built.dual_basis, RatMatrix::identity(p_dim));
    require(cert.region == Region::except({Rat(1), Rat(2)}), "region excludes the state eigenvalues");
    check_fullrank_certificate(built.fullrank_view, built.dual_basis, p_dim);

    // Grade q at infinity holds unconditionally through the full rank view.
    const auto gv = linearization_at_infinity_grade(built.fullrank_view, built.dual_basis,
                                                    RatMatrix::identity(p_dim), static_cast<int>(q) - 1, 0);
    require(gv.verdict.holds && gv.grade == static_cast<int>(q), "grade q at infinity");

    // Grade 1 via the wide state holds iff the leading coefficient has full column rank.
    SuBaiParams invertible = p;
    invertible.D[q] = ident(2);
    const SuBaiBuild good = subai_build(invertible);
    require(is_minimal_at_infinity(good.psm_full_state), "full rank leading coefficient");
    LinearizationClaim claim(good.psm_full_state, good.G);
    require(is_linearization_at_infinity(claim, 1).holds, "grade 1 with invertible leading coefficient");

    SuBaiParams singular = p;
    singular.D[q] = {{Rat(1), Rat(0)}, {Rat(0), Rat(0)}};
    const SuBaiBuild bad = subai_build(singular);
    require(!is_minimal_at_infinity(bad.psm_full_state), "rank-deficient leading coefficient");
    const auto gv2 = linearization_at_infinity_grade(bad.fullrank_view, bad.dual_basis,
                                                     RatMatrix::identity(p_dim), static_cast<int>(q) - 1, 0);
    require(gv2.verdict.holds, "full rank view stays grade q");
}

void criterion8() {
    Rng rng(1008);

    // Basis recursion.
    for (int k = 0; k < 5; ++k) {
        const NleigsParams prm = random_nleigs_params(rng, static_cast<std::size_t>(rng.uniform(1, 5)));
        for (std::size_t j = 0; j + 1 <= prm.order(); ++j) {
            const RatFun lhs = RatFun{prm.scaled_pole_factor(j + 1)} * nleigs_b(prm, j + 1);
            const RatFun rhs = RatFun{prm.node_factor(j)} * nleigs_b(prm, j);
            require(lhs == rhs, "basis recursion");
        }
    }

    int checked = 0, holds_seen = 0, fails_seen = 0;
    while (checked < 50) {
        const std::size_t N = static_cast<std::size_t>(rng.uniform(2, 5));
        const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
        NleigsBasic b;
        b.params = random_nleigs_params(rng, N);
        for (std::size_t i = 0; i <= N; ++i) b.D.push_back(rng.constmatrix(m, m));
        const auto finite = b.params.finite_poles(N - 1);
        const bool engineer_failure = !finite.empty() && checked % 3 == 0;
        if (engineer_failure) {
            // Force the criterion matrix to vanish at the first finite pole.
            const Rat pole = finite.front();
            RatMatrix partial(m, m);
            for (std::size_t j = 1; j < N; ++j) {
                RatFun prod{Rat(1)};
                for (std::size_t t = j + 1; t <= N; ++t)
                    prod = prod * RatFun(b.params.scaled_pole_factor(t), b.params.node_factor(t - 1));
                RatMatrix dj(m, m);
                for (std::size_t r = 0; r < m; ++r)
                    for (std::size_t c = 0; c < m; ++c) dj.at(r, c) = prod * RatFun{b.D[j][r][c]};
                partial = partial + dj;
            }
            const auto val = eval_at(partial, pole);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c) b.D[N][r][c] = -val[r][c];
        }

        const NleigsBuild built = nleigs_build(b);

        // Dual basis identities.
        if (built.fullrank_view.k1()) {
            const RatMatrix K = RatMatrix::from_poly(*built.fullrank_view.k1());
            require((K * built.dual_basis.transpose()).is_zero(), "duality product");
        }
        require(RatMatrix::from_poly(built.fullrank_view.middle()) * built.dual_basis.transpose() ==
                    built.Q,
                "associated matrix identity");

        // Scaled transfer identity.
        const RatFun scale = RatFun{b.params.beta[0]} * RatFun{b.params.scaled_pole_factor(N)} *
                             RatFun(Poly::one(), Poly{b.params.beta[N]});
        require(transfer_function(built.psm_view) == scale * built.Q, "scaled transfer identity");

        // Criterion equivalence, both directions, pointwise.
        const auto cert = nleigs_minimality(b);
        const bool direct = is_minimal_in(built.psm_view, Region::all());
        require(cert.verdict.holds == direct, "criterion equivalence");
        for (const auto& rep : cert.per_pole)
            require(rep.ok == is_minimal_at(built.psm_view, rep.pole), "pointwise criterion");
        if (cert.verdict.holds) ++holds_seen;
        if (!cert.verdict.holds) ++fails_seen;

        // Region and grade certificates through the full rank view.
        const auto reg = linearization_region(built.fullrank_view, built.dual_basis, RatMatrix::identity(m));
        require(reg.region == Region::except(b.params.finite_poles(N)), "certified region");
        const int iN = static_cast<int>(b.params.infinite_pole_count());
        const auto gv = linearization_at_infinity_grade(built.fullrank_view, built.dual_basis,
                                                        RatMatrix::identity(m), iN - 1, 0);
        require(gv.verdict.holds && gv.grade == iN, "grade equals the infinite pole count");

        // Closed-form Smith form of the designated state.
        require(nleigs_pole_structure(b) == smith_form(built.psm_view.state_matrix()),
                "state pole structure");

        ++checked;
    }
    require(holds_seen > 0 && fails_seen > 0, "both directions of the criterion exercised");
}

void criterion9() {
    Rng rng(1009);
    int checked = 0, holds_seen = 0, fails_seen = 0, simplified_seen = 0;
    while (checked < 30) {
        const std::size_t N = static_cast<std::size_t>(rng.uniform(2, 4));
        const std::size_t p = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(N) - 2));
        const std::size_t m = 2, r = 1;
        NleigsLowRank lr;
        lr.params = random_nleigs_params(rng, N);
        const bool prefix_infinite = checked % 2 == 0;
        if (prefix_infinite)
            for (std::size_t i = 0; i < p; ++i) lr.params.xi[i] = Point::infinity();
        lr.split = p;
        lr.rank = r;
        for (std::size_t i = 0; i <= p; ++i) lr.Dt.push_back(rng.constmatrix(m, m));
        for (std::size_t i = p + 1; i <= N; ++i) lr.Lt.push_back(rng.constmatrix(m, r));
        lr.Ut = rng.full_rank_constmatrix(m, r);

        const auto finite = lr.params.finite_poles(N - 1);
        if (!finite.empty() && checked % 3 == 0) {
            // Engineer a rank drop of the reduced column block at the first finite pole.
            const Rat pole = finite.front();
            RatMatrix partial(m, r);
            for (std::size_t j = p + 1; j < N; ++j) {
                RatFun prod{Rat(1)};
                for (std::size_t t = j + 1; t <= N; ++t)
                    prod = prod * RatFun(lr.params.scaled_pole_factor(t), lr.params.node_factor(t - 1));
                RatMatrix ljm(m, r);
                for (std::size_t rr = 0; rr < m; ++rr)
                    for (std::size_t cc = 0; cc < r; ++cc)
                        ljm.at(rr, cc) = prod * RatFun{lr.Lt[j - p - 1][rr][cc]};
                partial = partial + ljm;
            }
            const auto val = eval_at(partial, pole);
            for (std::size_t rr = 0; rr < m; ++rr)
                for (std::size_t cc = 0; cc < r; ++cc) lr.Lt[N - p - 1][rr][cc] = -val[rr][cc];
        }

        const NleigsLowRankBuild built = nleigs_lowrank_build(lr);

        // Dual basis and transfer identities.
        require(built.fullrank_view.k1().has_value(), "lower block present");
        const RatMatrix K = RatMatrix::from_poly(*built.fullrank_view.k1());
        require((K * built.dual_basis.transpose()).is_zero(), "duality product");
        require(RatMatrix::from_poly(built.fullrank_view.middle()) * built.dual_basis.transpose() ==
                    built.Q,
                "associated matrix identity");
        const RatFun scale = RatFun{lr.params.beta[0]} * RatFun{lr.params.scaled_pole_factor(N)} *
                             RatFun(Poly::one(), Poly{lr.params.beta[N]});
        require(transfer_function(built.psm_view) == scale * built.Q, "scaled transfer identity");

        // Criterion equivalence both directions, pointwise.
        const auto cert = nleigs_lowrank_minimality(lr);
        const bool direct = is_minimal_in(built.psm_view, Region::all());
        require(cert.verdict.holds == direct, "criterion equivalence");
        for (const auto& rep : cert.per_pole)
            require(rep.ok == is_minimal_at(built.psm_view, rep.pole), "pointwise criterion");
        if (cert.verdict.holds) ++holds_seen;
        if (!cert.verdict.holds) ++fails_seen;

        // Simplified criterion agrees whenever it applies.
        if (cert.simplified_criterion) {
            require(*cert.simplified_criterion == cert.verdict.holds, "simplified criterion agreement");
            ++simplified_seen;
        }

        // Region through the full rank view; grade only under the all-finite-tail hypothesis.
        const auto reg = linearization_region(built.fullrank_view, built.dual_basis, RatMatrix::identity(m));
        require(reg.region == Region::except(lr.params.finite_poles(N)), "certified region");
        bool tail_finite = true;
        for (std::size_t i = p; i + 1 < N; ++i)
            tail_finite = tail_finite && !lr.params.xi[i].is_infinity();
        if (tail_finite) {
            const int iN = static_cast<int>(lr.params.infinite_pole_count());
            const auto gv = linearization_at_infinity_grade(built.fullrank_view, built.dual_basis,
                                                            RatMatrix::identity(m), iN - 1, 0);
            require(gv.verdict.holds && gv.grade == iN, "grade under the all-finite-tail hypothesis");
        }
        ++checked;
    }
    require(holds_seen > 0 && fails_seen > 0 && simplified_seen > 0,
            "both directions and the simplified path exercised");
}

void criterion10() {
    // (a) wide-state view of the state-space family: leading coupling nonzero,
    // grade equals the polynomial-part degree.
    {
        SuBaiParams p;
        p.D = {{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}},
               {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}},
               {{Rat(1), Rat(0)}, {Rat(0), Rat(2)}}};
        p.A = {{Rat(3)}};
        p.B = {{Rat(1), Rat(0)}};
        p.C = {{Rat(1)}, {Rat(1)}};
        const SuBaiBuild built = subai_build(p);
        // State: the trailing resolvent block l I - A.
        const Pencil& L = built.pencil;
        const std::size_t q = 2, m = 2, n = 1, pd = 2;
        std::vector<std::size_t> srows, scols;
        for (std::size_t i = 0; i < n; ++i) srows.push_back(pd + (q - 1) * m + i);
        for (std::size_t j = 0; j < n; ++j) scols.push_back(q * m + j);
        SystemMatrix strong_view(L, srows, scols);
        const auto rep = classify_vs_strong(strong_view, built.G);
        require(rep.verdict == StrongComparison::gG_strong, "case (a) classification");
        require(rep.grade == static_cast<int>(q), "case (a) grade");
        LinearizationClaim claim(strong_view, built.G);
        require(is_g_strong(claim, rep.grade).holds, "case (a) confirmed by the graded check");
    }

    // (b) constant polynomial part with a minimal realization: grade bumps to one.
    {
        const SystemMatrix pencil = io::parse_psm_text(
            "polymatrix 2 2\n"
            "l-2 ; 1\n"
            "-1 ; 1\n"
            "staterows: 1\n"
            "statecols: 1\n");
        const RatMatrix g = transfer_function(pencil);
        const auto rep = classify_vs_strong(pencil, g);
        require(rep.verdict == StrongComparison::gG_plus_1_strong, "case (b) classification");
        require(rep.grade == 1, "case (b) grade");
        require(is_g_strong(LinearizationClaim(pencil, g), 1).holds, "case (b) confirmed");
    }

    // (c) vanishing leading coupling with mismatched sizes: no grade works.
    {
        const SystemMatrix pencil = io::parse_psm_text(
            "polymatrix 3 3\n"
            "l ; 1 ; 0\n"
            "-1 ; 0 ; 0\n"
            "0 ; 0 ; 1\n"
            "staterows: 1\n"
            "statecols: 1\n");
        RatMatrix g(1, 1);
        g.at(0, 0) = RatFun(Poly::one(), Poly::monomial(Rat(1), 1));
        const auto rep = classify_vs_strong(pencil, g);
        require(rep.verdict == StrongComparison::not_g_strong_any_g, "case (c) classification");
        for (int grade = -3; grade <= 3; ++grade)
            require(!is_g_strong(LinearizationClaim(pencil, g, 1, 0), grade).holds,
                    "case (c) fails for every grade");
    }
}

void criterion11() {
    Rng rng(1011);

    // Shifted-residue partition.
    {
        SaadParams p;
        p.A0 = rng.constmatrix(2, 2);
        p.B0 = rng.constmatrix(2, 2);
        p.B = {rng.full_rank_constmatrix(2, 2)};
        p.sigma = {Rat(2)};
        const SaadFullRankView view = saad_fullrank_view(p);
        check_fullrank_certificate(view.view, view.dual_basis, 2);
    }

    // State-space family with rational state eigenvalues.
    {
        SuBaiParams p;
        p.D = {{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}},
               {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}},
               {{Rat(2), Rat(0)}, {Rat(0), Rat(1)}}};
        p.A = {{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}};
        p.B = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
        p.C = {{Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
        const SuBaiBuild built = subai_build(p);
        check_fullrank_certificate(built.fullrank_view, built.dual_basis, 2);
    }

    // Interpolation families: the full rank certificates and the state-view
    // certificates from the dedicated criteria.
    int checked = 0;
    while (checked < 6) {
        const std::size_t N = static_cast<std::size_t>(rng.uniform(2, 4));
        const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 2));
        NleigsBasic b;
        b.params = random_nleigs_params(rng, N);
        for (std::size_t i = 0; i <= N; ++i) b.D.push_back(rng.constmatrix(m, m));
        std::optional<NleigsBuild> built;
        try {
            built.emplace(nleigs_build(b));
        } catch (const std::invalid_argument&) {
            continue;  // degenerate draw (e.g. singular state)
        }
        check_fullrank_certificate(built->fullrank_view, built->dual_basis, m);

        const auto cert = nleigs_minimality(b);
        LinearizationClaim claim(built->psm_view, built->Q);
        const Verdict v = is_linearization_in(claim, cert.certified_region);
        require(v.holds, "state-view certificate rejected: " + v.witness);
        ++checked;
    }

    int lr_checked = 0;
    while (lr_checked < 4) {
        const std::size_t N = static_cast<std::size_t>(rng.uniform(2, 4));
        const std::size_t p = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(N) - 2));
        NleigsLowRank lr;
        lr.params = random_nleigs_params(rng, N);
        lr.split = p;
        lr.rank = 1;
        for (std::size_t i = 0; i <= p; ++i) lr.Dt.push_back(rng.constmatrix(2, 2));
        for (std::size_t i = p + 1; i <= N; ++i) lr.Lt.push_back(rng.constmatrix(2, 1));
        lr.Ut = rng.full_rank_constmatrix(2, 1);
        std::optional<NleigsLowRankBuild> built;
        try {
            built.emplace(nleigs_lowrank_build(lr));
        } catch (const std::invalid_argument&) {
            continue;
        }
        check_fullrank_certificate(built->fullrank_view, built->dual_basis, 2);

        const auto cert = nleigs_lowrank_minimality(lr);
        LinearizationClaim claim(built->psm_view, built->Q);
        const Verdict v = is_linearization_in(claim, cert.certified_region);
        require(v.holds, "low-rank state-view certificate rejected: " + v.witness);
        ++lr_checked;
    }
}

}  // namespace

int main() {
    Checker checker;
    checker.run(1, "elimination and determinantal-divisor Smith forms agree on 200 random matrices",
                criterion1);
    checker.run(2, "worked 2x2 example: orders at infinity, pole divisor at 0, strong minimality",
                criterion2);
    checker.run(3, "pointwise structure from minimal system matrices matches the transfer function",
                criterion3);
    checker.run(4, "structure at infinity from minimal system matrices matches the transfer function",
                criterion4);
    checker.run(5, "orders at 0 of graded reversals shift the orders at infinity", criterion5);
    checker.run(6, "shifted-residue family: transfer, minimality, eigenvalues, grade 1", criterion6);
    checker.run(7, "state-space family: transfer, inverse columns, duality, grades", criterion7);
    checker.run(8, "interpolation family: identities, criterion equivalence, region and grade",
                criterion8);
    checker.run(9, "low-rank interpolation family: identities and criteria", criterion9);
    checker.run(10, "classification against the grade-free strong notion", criterion10);
    checker.run(11, "every certified region passes the pointwise linearization checker", criterion11);
    return checker.all_ok ? 0 : 1;
}
