#pragma once

#include "ratlin/fullrank.hpp"

#include <optional>
#include <vector>

namespace ratlin {

using ConstMatrix = std::vector<std::vector<Rat>>;

/// G(l) = -B0 + l*A0 + sum_i B_i / (l - sigma_i), with the companion system
/// matrix carrying diag((l - sigma_i) I) as state.
struct SaadParams {
    ConstMatrix A0;
    ConstMatrix B0;
    std::vector<ConstMatrix> B;
    std::vector<Rat> sigma;  // pairwise distinct
};

struct SaadBuild {
    RatMatrix G;
    SystemMatrix psm;
};

SaadBuild saad_build(const SaadParams& params);

/// The one-block-column full rank partition of the same pencil: rows permuted
/// to [M; K1], with the strictly proper dual basis.
struct SaadFullRankView {
    BlockFullRank view;
    RatMatrix dual_basis;  // N1
};

SaadFullRankView saad_fullrank_view(const SaadParams& params);

/// G(l) = D_q l^q + ... + D_0 + C (l I - A)^-1 B with D_q != 0 and q >= 2.
struct SuBaiParams {
    std::vector<ConstMatrix> D;  // D_0 ... D_q
    ConstMatrix A;               // n x n
    ConstMatrix B;               // n x m
    ConstMatrix C;               // p x n
};

struct SuBaiBuild {
    RatMatrix G;
    Pencil pencil;                 // the companion-like pencil
    SystemMatrix psm_full_state;   // pencil with the wide state submatrix
    BlockFullRank fullrank_view;   // [M; K1] partition
    RatMatrix dual_basis;          // N1 for the full rank view
};

SuBaiBuild subai_build(const SuBaiParams& params);

struct NleigsParams {
    std::vector<Rat> sigma;    // N nodes
    std::vector<Point> xi;     // N poles, finite nonzero or infinity
    std::vector<Rat> beta;     // N+1 nonzero scalings

    [[nodiscard]] std::size_t order() const { return sigma.size(); }  // N
    /// beta_i * (1 - l/xi_i); the factor is the constant beta_i for an infinite pole.
    [[nodiscard]] Poly scaled_pole_factor(std::size_t i) const;  // 1-based, g_i
    /// l - sigma_j.
    [[nodiscard]] Poly node_factor(std::size_t j) const;  // 0-based, h_j
    [[nodiscard]] std::size_t infinite_pole_count() const;  // over xi_1..xi_N
    [[nodiscard]] std::vector<Rat> finite_poles(std::size_t upto) const;  // set over xi_1..xi_upto
    [[nodiscard]] bool poles_distinct_from_nodes() const;

    void validate() const;
};

/// Basis function b_i; b_0 = 1/beta_0, then the running product of node over
/// scaled-pole factors.
RatFun nleigs_b(const NleigsParams& params, std::size_t i);

struct NleigsBasic {
    NleigsParams params;
    std::vector<ConstMatrix> D;  // N+1 square coefficient matrices
};

struct NleigsBuild {
    RatMatrix Q;               // the represented rational matrix
    Pencil pencil;             // [M; K]
    SystemMatrix psm_view;     // state = pencil minus first block row/column
    BlockFullRank fullrank_view;
    RatMatrix dual_basis;      // N_N
};

NleigsBuild nleigs_build(const NleigsBasic& basic);

/// (Q - b_0 D_0) / b_N expanded into the finite product form.
RatMatrix nleigs_RN(const NleigsBasic& basic);

struct PoleReport {
    Rat pole;
    bool ok = false;  // criterion matrix nonsingular / full column rank at this pole
};

struct MinimalityCertificate {
    Verdict verdict;
    std::vector<PoleReport> per_pole;
    Region certified_region = Region::all();  // where the pencil linearizes Q with the designated state
    std::string caveat;       // e.g. final pole structure not visible for finite xi_N
};

/// Evaluates the dedicated minimality criterion at every finite pole among
/// xi_1..xi_{N-1}; requires all poles distinct from all nodes.
MinimalityCertificate nleigs_minimality(const NleigsBasic& basic);

/// The known closed form of the Smith form of the designated state matrix:
/// m copies of the monic product over finite poles xi_1..xi_{N-1}.
SmithForm nleigs_pole_structure(const NleigsBasic& basic);

struct NleigsLowRank {
    NleigsParams params;
    std::vector<ConstMatrix> Dt;  // D~_0 ... D~_p, m x m
    std::vector<ConstMatrix> Lt;  // L~_{p+1} ... L~_N, m x r
    ConstMatrix Ut;               // m x r
    std::size_t split = 0;        // p
    std::size_t rank = 0;         // r
};

struct NleigsLowRankBuild {
    RatMatrix Q;
    Pencil pencil;
    SystemMatrix psm_view;
    BlockFullRank fullrank_view;
    RatMatrix dual_basis;
};

NleigsLowRankBuild nleigs_lowrank_build(const NleigsLowRank& lr);

/// The (2m+r) x (m+r) criterion matrix assembled from the two partial sums.
RatMatrix nleigs_lowrank_RN(const NleigsLowRank& lr);
RatMatrix nleigs_lowrank_RN1(const NleigsLowRank& lr);
RatMatrix nleigs_lowrank_RN2(const NleigsLowRank& lr);

struct LowRankMinimalityCertificate {
    Verdict verdict;
    std::vector<PoleReport> per_pole;
    Region certified_region = Region::all();
    std::string caveat;
    /// Same verdict via the reduced column test, available when xi_1..xi_p are all infinite.
    std::optional<bool> simplified_criterion;
    /// Sufficient square test (second block row removed): true means certified.
    bool square_test_sufficient = false;
};

LowRankMinimalityCertificate nleigs_lowrank_minimality(const NleigsLowRank& lr);

}  // namespace ratlin
