#include <doctest.h>

#include "ratlin/io.hpp"
#include "support.hpp"

using namespace ratlin;
using testsupport::P;
using testsupport::Q;

namespace {

// 4x4 pencil with state block diag(l, 1): strongly minimal, transfer equals
// the running 2x2 example.
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

RatMatrix example2x2() {
    return io::parse_ratmatrix_text(
        "ratmatrix 2 2\n"
        "l^2+l-1 / l ; -1 / l\n"
        "-1 ; -l^2+l-2\n");
}

// Scalar shifted-residue instance: G = l + 1/l, state (l - 0).
SystemMatrix scalar_shifted() {
    return io::parse_psm_text(
        "polymatrix 2 2\n"
        "l ; 1\n"
        "-1 ; l\n"
        "staterows: 1\n"
        "statecols: 1\n");
}

}  // namespace

TEST_CASE("construction validates the state block") {
    SUBCASE("singular state is rejected") {
        PolyMatrix p = io::parse_polymatrix_text("polymatrix 2 2\nl ; 1\nl ; 1\n");
        CHECK_THROWS_WITH_AS(make_psm(p, {0, 1}, {0, 1}), "state matrix singular", std::invalid_argument);
    }
    SUBCASE("empty state is always valid and transfers to the matrix itself") {
        PolyMatrix p = io::parse_polymatrix_text("polymatrix 2 2\nl ; 1\n0 ; l\n");
        SystemMatrix psm = make_psm(p, {}, {});
        CHECK(transfer_function(psm) == RatMatrix::from_poly(p));
        CHECK(is_minimal_at(psm, Q(0)));
        CHECK(is_minimal_in(psm, Region::all()));
    }
    SUBCASE("index validation") {
        PolyMatrix p = io::parse_polymatrix_text("polymatrix 2 2\nl ; 1\n0 ; l\n");
        CHECK_THROWS_AS(make_psm(p, {0, 0}, {0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(make_psm(p, {5}, {0}), std::invalid_argument);
        CHECK_THROWS_AS(make_psm(p, {0}, {}), std::invalid_argument);
    }
}

TEST_CASE("transfer functions") {
    SUBCASE("scalar shifted instance gives l + 1/l") {
        const RatMatrix g = transfer_function(scalar_shifted());
        REQUIRE(g.rows() == 1);
        CHECK(g.at(0, 0) == RatFun(P({1, 0, 1}), P({0, 1})));
    }
    SUBCASE("4x4 pencil transfers to the worked example") {
        CHECK(transfer_function(pencil4x4()) == example2x2());
    }
}

TEST_CASE("rank relation holds for random system matrices") {
    testsupport::Rng rng(53);
    for (int k = 0; k < 15; ++k) {
        const SystemMatrix psm = rng.psm(2, 2, 2, 2);
        CHECK(rank_relation_check(psm));
    }
}

TEST_CASE("minimality at points") {
    // State (l - 0) with zero residue coupling: B block vanishes at nothing,
    // C block is l at the state column.
    SystemMatrix bad = io::parse_psm_text(
        "polymatrix 2 2\n"
        "l ; 1\n"
        "l ; l\n"
        "staterows: 1\n"
        "statecols: 1\n");
    CHECK(is_minimal_at(bad, Q(1)));
    CHECK_FALSE(is_minimal_at(bad, Q(0)));  // [A; C](0) = [0; 0]

    auto defects = minimality_defect_points(bad);
    CHECK(defects.points == std::vector<Rat>{Q(0)});
    CHECK(defects.factors.empty());

    CHECK_FALSE(is_minimal_in(bad, Region::all()));
    CHECK(is_minimal_in(bad, Region::except({Q(0)})));
    CHECK(is_minimal_in(bad, Region::only({Q(2)})));
    CHECK_FALSE(is_minimal_in(bad, Region::only({Q(0)})));
}

TEST_CASE("non-rational defect points are reported as factors") {
    // State l^2 - 2 with constant couplings that vanish nowhere rationally.
    SystemMatrix psm = io::parse_psm_text(
        "polymatrix 2 2\n"
        "l^2-2 ; l^2-2\n"
        "l^2-2 ; 0\n"
        "staterows: 1\n"
        "statecols: 1\n");
    auto defects = minimality_defect_points(psm);
    CHECK(defects.points.empty());
    REQUIRE(defects.factors.size() == 1);
    CHECK(defects.factors[0] == P({-2, 0, 1}));
    CHECK_FALSE(is_minimal_in(psm, Region::all()));
    CHECK(is_minimal_in(psm, Region::except({}, {P({-2, 0, 1})})));
}

TEST_CASE("minimality at infinity") {
    CHECK(is_minimal_at_infinity(scalar_shifted()));
    CHECK(is_minimal_at_infinity(pencil4x4()));

    // Constant system matrix.
    SystemMatrix constant = io::parse_psm_text(
        "polymatrix 2 2\n"
        "1 ; 1\n"
        "0 ; 2\n"
        "staterows: 1\n"
        "statecols: 1\n");
    CHECK(is_minimal_at_infinity(constant));

    // Leading coefficients lose rank: state l, blocks constant, C row constant.
    SystemMatrix bad = io::parse_psm_text(
        "polymatrix 2 2\n"
        "l ; l\n"
        "1 ; 1\n"
        "staterows: 1\n"
        "statecols: 1\n");
    // [A_1; C_1] = [1; 0] has rank 1 = n; [A_1 B_1] = [1 1] rank 1: minimal.
    CHECK(is_minimal_at_infinity(bad));
    SystemMatrix bad2 = io::parse_psm_text(
        "polymatrix 2 2\n"
        "1 ; l\n"
        "l ; 1\n"
        "staterows: 1\n"
        "statecols: 1\n");
    // A_1 = 0, C_1 = -1 -> [A_1 B_1] = [0 1] rank 1 but [A_1; C_1] = [0; -1] rank 1: minimal.
    CHECK(is_minimal_at_infinity(bad2));
    SystemMatrix bad3 = io::parse_psm_text(
        "polymatrix 2 2\n"
        "1 ; 1\n"
        "1 ; l\n"
        "staterows: 1\n"
        "statecols: 1\n");
    // A_1 = 0, B_1 = 0 -> [A_1 B_1] = [0 0] rank 0 < 1: not minimal at infinity.
    CHECK_FALSE(is_minimal_at_infinity(bad3));
}

TEST_CASE("strong minimality of the 4x4 pencil") {
    CHECK(is_strongly_minimal(pencil4x4()));
}

TEST_CASE("structure at a point reads off both elementary divisor lists") {
    SUBCASE("4x4 pencil at 0") {
        auto rep = structure_at(pencil4x4(), Q(0));
        CHECK(rep.pole_eds == std::vector<int>{1});
        CHECK(rep.zero_eds.empty());
        // Independent route through the transfer function.
        auto ls = local_structure(example2x2(), Point::at(Q(0)));
        CHECK(rep.pole_eds == ls.pole_mults);
        CHECK(rep.zero_eds == ls.zero_mults);
    }
    SUBCASE("regular point gives empty lists") {
        auto rep = structure_at(pencil4x4(), Q(3));
        CHECK(rep.pole_eds.empty());
        CHECK(rep.zero_eds.empty());
    }
    SUBCASE("refuses without minimality") {
        SystemMatrix bad = io::parse_psm_text(
            "polymatrix 2 2\n"
            "l ; 1\n"
            "l ; l\n"
            "staterows: 1\n"
            "statecols: 1\n");
        CHECK_THROWS_AS(structure_at(bad, Q(0)), std::domain_error);
    }
}

TEST_CASE("structure at a random minimal point matches the transfer function") {
    testsupport::Rng rng(59);
    int done = 0;
    while (done < 25) {
        const SystemMatrix psm = rng.psm(2, 2, 2, 1);
        const Rat a = rng.rat();
        if (!is_minimal_at(psm, a)) continue;
        const auto rep = structure_at(psm, a);
        const auto ls = local_structure(transfer_function(psm), Point::at(a));
        CHECK(rep.pole_eds == ls.pole_mults);
        CHECK(rep.zero_eds == ls.zero_mults);
        ++done;
    }
}

TEST_CASE("structure at infinity") {
    SUBCASE("4x4 pencil has orders (-2,-1)") {
        auto orders = structure_at_infinity(pencil4x4());
        CHECK(orders.orders == std::vector<int>{-2, -1});
        auto direct = invariant_orders(example2x2(), Point::infinity());
        CHECK(orders.orders == direct.orders);
    }
    SUBCASE("scalar shifted instance") {
        auto orders = structure_at_infinity(scalar_shifted());
        auto direct = invariant_orders(transfer_function(scalar_shifted()), Point::infinity());
        CHECK(orders.orders == direct.orders);
    }
    SUBCASE("constant system matrix has all orders zero") {
        SystemMatrix constant = io::parse_psm_text(
            "polymatrix 2 2\n"
            "1 ; 1\n"
            "0 ; 2\n"
            "staterows: 1\n"
            "statecols: 1\n");
        auto orders = structure_at_infinity(constant);
        CHECK(orders.orders == std::vector<int>{0});
    }
    SUBCASE("matches the transfer function on random minimal draws") {
        testsupport::Rng rng(61);
        int done = 0;
        while (done < 25) {
            const SystemMatrix psm = rng.psm(2, 2, 2, 1);
            if (!is_minimal_at_infinity(psm)) continue;
            auto via_pencil = structure_at_infinity(psm);
            auto direct = invariant_orders(transfer_function(psm), Point::infinity());
            CHECK(via_pencil.orders == direct.orders);
            ++done;
        }
    }
}

TEST_CASE("minimality is invariant under permuting non-state rows and columns") {
    testsupport::Rng rng(67);
    for (int k = 0; k < 10; ++k) {
        const SystemMatrix psm = rng.psm(2, 2, 2, 1);
        // Swap the two non-state rows and columns.
        const PolyMatrix& p = psm.matrix();
        std::vector<std::size_t> rows{0, 1, 3, 2}, cols{0, 1, 3, 2};
        SystemMatrix permuted(p.submatrix(rows, cols), {0, 1}, {0, 1});
        const Rat a = rng.rat();
        CHECK(is_minimal_at(psm, a) == is_minimal_at(permuted, a));
        CHECK(is_minimal_at_infinity(psm) == is_minimal_at_infinity(permuted));
    }
}
