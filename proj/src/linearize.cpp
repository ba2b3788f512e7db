#include "ratlin/linearize.hpp"

#include <algorithm>
#include <sstream>

namespace ratlin {

namespace {

std::string mult_list(const std::vector<int>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

}  // namespace

LinearizationClaim::LinearizationClaim(SystemMatrix L, RatMatrix G, std::size_t s1_, std::size_t s2_)
    : pencil(std::move(L)), target(std::move(G)), s1(s1_), s2(s2_) {
    if (!pencil.matrix().is_pencil()) throw std::invalid_argument("system matrix degree exceeds one");
    const auto q = static_cast<long long>(pencil.output_dim());
    const auto r = static_cast<long long>(pencil.input_dim());
    const auto p = static_cast<long long>(target.rows());
    const auto m = static_cast<long long>(target.cols());
    const long long ds = static_cast<long long>(s1) - static_cast<long long>(s2);
    if (q - p != r - m || ds != q - p)
        throw std::invalid_argument("padding sizes do not match the dimension bookkeeping");
}

namespace {

std::size_t default_pad_s1(const SystemMatrix& L, const RatMatrix& G) {
    const long long d = static_cast<long long>(L.output_dim()) - static_cast<long long>(G.rows());
    return d > 0 ? static_cast<std::size_t>(d) : 0;
}

std::size_t default_pad_s2(const SystemMatrix& L, const RatMatrix& G) {
    const long long d = static_cast<long long>(G.rows()) - static_cast<long long>(L.output_dim());
    return d > 0 ? static_cast<std::size_t>(d) : 0;
}

}  // namespace

LinearizationClaim::LinearizationClaim(SystemMatrix L, RatMatrix G)
    : LinearizationClaim(L, G, default_pad_s1(L, G), default_pad_s2(L, G)) {}

namespace {

// Shared rank bookkeeping: rank(target) + s1 == rank(transfer) + s2.
Verdict rank_condition(const LinearizationClaim& claim, const RatMatrix& transfer) {
    const std::size_t rg = normal_rank(claim.target);
    const std::size_t rh = normal_rank(transfer);
    if (rg + claim.s1 != rh + claim.s2) {
        std::ostringstream os;
        os << "rank gap: target has normal rank " << rg << " (+" << claim.s1 << " padding), transfer has "
           << rh << " (+" << claim.s2 << ")";
        return Verdict::no(os.str());
    }
    return Verdict::yes();
}

Verdict compare_structures(const LocalStructure& target, const LocalStructure& found, const std::string& where) {
    if (target.pole_mults != found.pole_mults)
        return Verdict::no("pole structure differs " + where + ": target " + mult_list(target.pole_mults) +
                           " vs pencil " + mult_list(found.pole_mults));
    if (target.zero_mults != found.zero_mults)
        return Verdict::no("zero structure differs " + where + ": target " + mult_list(target.zero_mults) +
                           " vs pencil " + mult_list(found.zero_mults));
    return Verdict::yes();
}

}  // namespace

Verdict is_linearization_at(const LinearizationClaim& claim, const Rat& lambda0) {
    if (!is_minimal_at(claim.pencil, lambda0))
        return Verdict::no("pencil not minimal at " + rat_to_string(lambda0));
    const RatMatrix transfer = transfer_function(claim.pencil);
    if (Verdict v = rank_condition(claim, transfer); !v.holds) return v;
    const Point pt = Point::at(lambda0);
    return compare_structures(local_structure(claim.target, pt), local_structure(transfer, pt),
                              "at " + rat_to_string(lambda0));
}

namespace {

// Multiplicity profile of a squarefree rational-root-free factor across the
// diagonal fractions; poles count negative.
std::vector<int> factor_profile(const SmithMcMillan& sm, const Poly& factor) {
    std::vector<int> prof;
    for (const auto& [eps, psi] : sm.fractions) {
        const int m = divisor_multiplicity(eps, factor) - divisor_multiplicity(psi, factor);
        if (m != 0) prof.push_back(m);
    }
    std::sort(prof.begin(), prof.end());
    return prof;
}

}  // namespace

Verdict is_linearization_in(const LinearizationClaim& claim, const Region& region) {
    const RatMatrix transfer = transfer_function(claim.pencil);
    if (Verdict v = rank_condition(claim, transfer); !v.holds) return v;

    const DefectPoints defects = minimality_defect_points(claim.pencil);
    const SmithMcMillan sm_g = smith_mcmillan(claim.target);
    const SmithMcMillan sm_h = smith_mcmillan(transfer);

    // Candidate finite points: minimality defects plus all rational roots of
    // the diagonal data of either matrix. Everywhere else both local forms
    // are trivial and the pencil is minimal, so the conditions hold.
    std::vector<Rat> candidates = defects.points;
    std::vector<Poly> nonlinear;
    for (const SmithMcMillan* sm : {&sm_g, &sm_h}) {
        for (const auto& [eps, psi] : sm->fractions) {
            for (const Poly* p : {&eps, &psi}) {
                if (p->is_constant()) continue;
                const FactoredPoly f = factor_poly(*p);
                for (const auto& [root, mult] : f.rational_roots()) {
                    (void)mult;
                    candidates.push_back(root);
                }
                for (const auto& fac : f.nonlinear_factors()) nonlinear.push_back(fac.base);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const Rat& pt : candidates) {
        if (!region.contains(pt)) continue;
        if (Verdict v = is_linearization_at(claim, pt); !v.holds) return v;
    }

    // Non-rational loci: minimality must not fail inside the region, and the
    // factor profiles of both matrices must agree there.
    for (const Poly& f : defects.factors) {
        if (region.meets_factor(f))
            return Verdict::no("pencil not minimal at roots of " + poly_to_string(f));
    }
    for (const Poly& base : coprime_basis(nonlinear)) {
        if (!region.meets_factor(base)) continue;
        if (factor_profile(sm_g, base) != factor_profile(sm_h, base))
            return Verdict::no("structure differs at roots of " + poly_to_string(base));
    }
    return Verdict::yes();
}

Verdict is_linearization_at_infinity(const LinearizationClaim& claim, int grade) {
    const SystemMatrix rev = claim.pencil.reversal_system();
    if (!is_minimal_at(rev, Rat(0))) return Verdict::no("reversed pencil not minimal at 0");
    const RatMatrix transfer = transfer_function(claim.pencil);
    if (Verdict v = rank_condition(claim, transfer); !v.holds) return v;

    const RatMatrix rev_target = g_reversal(claim.target, grade);
    const LocalStructure target_s = local_structure(rev_target, Point::at(Rat(0)));

    LocalStructure found;
    found.point = Point::at(Rat(0));
    if (claim.pencil.state_dim() > 0) found.pole_mults = local_elementary_divisors(rev.state_matrix(), Rat(0));
    found.zero_mults = local_elementary_divisors(rev.matrix(), Rat(0));

    return compare_structures(target_s, found, "at infinity (grade " + std::to_string(grade) + ")");
}

Verdict is_g_strong(const LinearizationClaim& claim, int grade) {
    if (Verdict v = is_linearization_in(claim, Region::all()); !v.holds) return v;
    return is_linearization_at_infinity(claim, grade);
}

InvariantOrders recover_infinite_orders(const SystemMatrix& pencil, int grade) {
    if (!pencil.matrix().is_pencil()) throw std::invalid_argument("system matrix degree exceeds one");
    const SystemMatrix rev = pencil.reversal_system();
    if (!is_minimal_at(rev, Rat(0)))
        throw std::domain_error("order recovery requires the reversed pencil to be minimal at 0");
    std::vector<int> pole_part;
    if (pencil.state_dim() > 0) pole_part = local_elementary_divisors(rev.state_matrix(), Rat(0));
    const std::vector<int> zero_part = local_elementary_divisors(rev.matrix(), Rat(0));
    const std::size_t r = normal_rank(pencil.matrix()) - pencil.state_dim();
    if (pole_part.size() + zero_part.size() > r)
        throw std::domain_error("inconsistent multiplicity counts at infinity");
    InvariantOrders out;
    out.point = Point::infinity();
    for (auto it = pole_part.rbegin(); it != pole_part.rend(); ++it) out.orders.push_back(-*it - grade);
    for (std::size_t k = pole_part.size() + zero_part.size(); k < r; ++k) out.orders.push_back(-grade);
    for (int e : zero_part) out.orders.push_back(e - grade);
    return out;
}

std::string to_string(StrongComparison c) {
    switch (c) {
        case StrongComparison::gG_strong: return "gG_strong";
        case StrongComparison::gG_plus_1_strong: return "gG_plus_1_strong";
        case StrongComparison::not_g_strong_any_g: return "not_g_strong_any_g";
        case StrongComparison::not_applicable: return "not_applicable";
    }
    return "";
}

StrongComparisonReport classify_vs_strong(const SystemMatrix& pencil, const RatMatrix& target) {
    StrongComparisonReport report;
    if (!pencil.matrix().is_pencil()) {
        report.detail = "system matrix degree exceeds one";
        return report;
    }
    const std::size_t n = pencil.state_dim();
    LinearizationClaim claim(pencil, target);

    if (Verdict v = is_linearization_in(claim, Region::all()); !v.holds) {
        report.detail = "not a linearization everywhere: " + v.witness;
        return report;
    }

    std::vector<std::vector<Rat>> a1;
    bool a1_invertible = true;
    if (n > 0) {
        a1 = pencil.state_matrix().coefficient(1);
        a1_invertible = rank_of_constant(a1) == n;
        if (!a1_invertible) {
            report.detail = "leading state coefficient singular";
            return report;
        }
    }

    // Default-reversal equivalence at 0 with padding, checked via invariant orders.
    const RatMatrix transfer = transfer_function(pencil);
    InvariantOrders ro_g = invariant_orders(reversal(target), Point::at(Rat(0)));
    InvariantOrders ro_h = invariant_orders(reversal(transfer), Point::at(Rat(0)));
    std::vector<int> padded_g = ro_g.orders;
    padded_g.insert(padded_g.end(), claim.s1, 0);
    std::vector<int> padded_h = ro_h.orders;
    padded_h.insert(padded_h.end(), claim.s2, 0);
    std::sort(padded_g.begin(), padded_g.end());
    std::sort(padded_h.begin(), padded_h.end());
    if (padded_g != padded_h) {
        report.detail = "default reversals are not equivalent at 0";
        return report;
    }

    const int g_target = default_grade(target);

    bool coupling_zero = true;  // D1 + C1 A1^-1 B1 == 0
    if (n > 0) {
        const RatMatrix A1 = RatMatrix::from_poly(PolyMatrix::constant(a1));
        const RatMatrix B1 = RatMatrix::from_poly(PolyMatrix::constant(pencil.input_block().coefficient(1)));
        const RatMatrix C1 = RatMatrix::from_poly(PolyMatrix::constant(pencil.output_block().coefficient(1)));
        const RatMatrix D1 = RatMatrix::from_poly(PolyMatrix::constant(pencil.direct_block().coefficient(1)));
        coupling_zero = (D1 + C1 * solve(A1, B1)).is_zero();
    }

    if (n == 0 || !coupling_zero) {
        report.verdict = StrongComparison::gG_strong;
        report.grade = g_target;
        report.detail = "strong of grade " + std::to_string(g_target);
        return report;
    }
    if (pencil.output_dim() == target.rows() && pencil.input_dim() == target.cols()) {
        report.verdict = StrongComparison::gG_plus_1_strong;
        report.grade = g_target + 1;
        report.detail = "strong of grade " + std::to_string(g_target + 1);
        return report;
    }
    report.verdict = StrongComparison::not_g_strong_any_g;
    report.detail = "proper transfer with mismatched dimensions";
    return report;
}

}  // namespace ratlin
