#include "ratlin/psm.hpp"

#include <algorithm>

namespace ratlin {

namespace {

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& taken) {
    std::vector<bool> used(n, false);
    for (std::size_t i : taken) used[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) out.push_back(i);
    return out;
}

void validate_indices(std::size_t bound, const std::vector<std::size_t>& idx) {
    std::vector<bool> seen(bound, false);
    for (std::size_t i : idx) {
        if (i >= bound) throw std::invalid_argument("state index out of range");
        if (seen[i]) throw std::invalid_argument("duplicate state index");
        seen[i] = true;
    }
}

}  // namespace

SystemMatrix::SystemMatrix(PolyMatrix P, std::vector<std::size_t> state_rows, std::vector<std::size_t> state_cols)
    : P_(std::move(P)), state_rows_(std::move(state_rows)), state_cols_(std::move(state_cols)) {
    if (state_rows_.size() != state_cols_.size())
        throw std::invalid_argument("state row and column selections differ in length");
    validate_indices(P_.rows(), state_rows_);
    validate_indices(P_.cols(), state_cols_);
    other_rows_ = complement(P_.rows(), state_rows_);
    other_cols_ = complement(P_.cols(), state_cols_);
    if (!state_rows_.empty() && determinant(state_matrix()).is_zero())
        throw std::invalid_argument("state matrix singular");
}

SystemMatrix make_psm(PolyMatrix P, std::vector<std::size_t> state_rows, std::vector<std::size_t> state_cols) {
    return {std::move(P), std::move(state_rows), std::move(state_cols)};
}

PolyMatrix SystemMatrix::state_matrix() const { return P_.submatrix(state_rows_, state_cols_); }
PolyMatrix SystemMatrix::input_block() const { return P_.submatrix(state_rows_, other_cols_); }
PolyMatrix SystemMatrix::direct_block() const { return P_.submatrix(other_rows_, other_cols_); }

PolyMatrix SystemMatrix::output_block() const {
    PolyMatrix minusC = P_.submatrix(other_rows_, state_cols_);
    return Poly{Rat(-1)} * minusC;
}

PolyMatrix SystemMatrix::state_column_block() const {
    std::vector<std::size_t> all_rows(P_.rows());
    for (std::size_t i = 0; i < P_.rows(); ++i) all_rows[i] = i;
    return P_.submatrix(all_rows, state_cols_);
}

PolyMatrix SystemMatrix::state_row_block() const {
    std::vector<std::size_t> all_cols(P_.cols());
    for (std::size_t j = 0; j < P_.cols(); ++j) all_cols[j] = j;
    return P_.submatrix(state_rows_, all_cols);
}

SystemMatrix SystemMatrix::reversal_system() const {
    const auto d = P_.degree();
    return {reversal_poly(P_, d ? *d : 0), state_rows_, state_cols_};
}

RatMatrix transfer_function(const SystemMatrix& psm) {
    const RatMatrix D = RatMatrix::from_poly(psm.direct_block());
    if (psm.state_dim() == 0) return D;
    const RatMatrix A = RatMatrix::from_poly(psm.state_matrix());
    const RatMatrix B = RatMatrix::from_poly(psm.input_block());
    const RatMatrix C = RatMatrix::from_poly(psm.output_block());
    return D + C * solve(A, B);
}

bool rank_relation_check(const SystemMatrix& psm) {
    return normal_rank(psm.matrix()) == psm.state_dim() + normal_rank(transfer_function(psm));
}

bool is_minimal_at(const SystemMatrix& psm, const Rat& lambda0) {
    const std::size_t n = psm.state_dim();
    if (n == 0) return true;
    return rank_at(psm.state_column_block(), lambda0) == n && rank_at(psm.state_row_block(), lambda0) == n;
}

DefectPoints minimality_defect_points(const SystemMatrix& psm) {
    DefectPoints out;
    const std::size_t n = psm.state_dim();
    if (n == 0) return out;
    std::vector<Poly> culprit_factors;
    for (const PolyMatrix& block : {psm.state_column_block(), psm.state_row_block()}) {
        const SmithForm s = smith_form(block);
        if (s.rank() != n) throw std::domain_error("state block lost normal rank");  // impossible: A nonsingular
        const FactoredPoly f = factor_poly(s.invariants.back());
        for (const auto& [root, mult] : f.rational_roots()) {
            (void)mult;
            out.points.push_back(root);
        }
        for (const auto& fac : f.nonlinear_factors()) culprit_factors.push_back(fac.base);
    }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    out.factors = coprime_basis(culprit_factors);
    return out;
}

bool is_minimal_in(const SystemMatrix& psm, const Region& region) {
    if (psm.state_dim() == 0) return true;
    const DefectPoints defects = minimality_defect_points(psm);
    switch (region.kind()) {
        case Region::Kind::All:
            return defects.empty();
        case Region::Kind::Finite: {
            return std::none_of(defects.points.begin(), defects.points.end(),
                                [&](const Rat& p) { return region.contains(p); });
        }
        case Region::Kind::Cofinite: {
            for (const Rat& p : defects.points)
                if (region.contains(p)) return false;
            for (const Poly& f : defects.factors)
                if (region.meets_factor(f)) return false;
            return true;
        }
    }
    return false;
}

bool is_minimal_at_infinity(const SystemMatrix& psm) {
    const std::size_t n = psm.state_dim();
    if (n == 0) return true;
    const auto deg = psm.matrix().degree();
    if (!deg || *deg == 0) return true;  // constant system matrix, state block invertible
    const SystemMatrix rev = psm.reversal_system();
    return is_minimal_at(rev, Rat(0));
}

bool is_strongly_minimal(const SystemMatrix& psm) {
    return is_minimal_in(psm, Region::all()) && is_minimal_at_infinity(psm);
}

PsmStructureReport structure_at(const SystemMatrix& psm, const Rat& lambda0) {
    if (!is_minimal_at(psm, lambda0))
        throw std::domain_error("structure query requires minimality at the point");
    PsmStructureReport out;
    out.point = lambda0;
    if (psm.state_dim() > 0) out.pole_eds = local_elementary_divisors(psm.state_matrix(), lambda0);
    out.zero_eds = local_elementary_divisors(psm.matrix(), lambda0);
    return out;
}

InvariantOrders structure_at_infinity(const SystemMatrix& psm) {
    if (!is_minimal_at_infinity(psm))
        throw std::domain_error("structure query requires minimality at infinity");
    const auto deg = psm.matrix().degree();
    const int d = deg ? *deg : 0;
    const SystemMatrix rev = psm.reversal_system();
    std::vector<int> pole_part;  // multiplicities of l at 0 in the reversed state matrix
    if (psm.state_dim() > 0) pole_part = local_elementary_divisors(rev.state_matrix(), Rat(0));
    const std::vector<int> zero_part = local_elementary_divisors(rev.matrix(), Rat(0));
    const std::size_t r = normal_rank(psm.matrix()) - psm.state_dim();
    if (pole_part.size() + zero_part.size() > r)
        throw std::domain_error("inconsistent multiplicity counts at infinity");
    InvariantOrders out;
    out.point = Point::infinity();
    for (auto it = pole_part.rbegin(); it != pole_part.rend(); ++it) out.orders.push_back(-*it - d);
    for (std::size_t k = pole_part.size() + zero_part.size(); k < r; ++k) out.orders.push_back(-d);
    for (int e : zero_part) out.orders.push_back(e - d);
    return out;
}

}  // namespace ratlin
