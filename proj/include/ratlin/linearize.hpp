#pragma once

#include "ratlin/psm.hpp"

#include <string>

namespace ratlin {

/// A claim "the pencil L, as a system matrix, linearizes the rational matrix
/// G" with explicit identity padding sizes s1, s2 (s1 - s2 = q - p = r - m).
struct LinearizationClaim {
    SystemMatrix pencil;
    RatMatrix target;
    std::size_t s1 = 0, s2 = 0;

    LinearizationClaim(SystemMatrix L, RatMatrix G, std::size_t s1_, std::size_t s2_);
    /// Normalized padding: one of s1, s2 zero, inferred from the dimensions.
    LinearizationClaim(SystemMatrix L, RatMatrix G);
};

struct Verdict {
    bool holds = false;
    std::string witness;  // nonempty iff holds == false

    static Verdict yes() { return {true, ""}; }
    static Verdict no(std::string why) { return {false, std::move(why)}; }
};

Verdict is_linearization_at(const LinearizationClaim& claim, const Rat& lambda0);
Verdict is_linearization_in(const LinearizationClaim& claim, const Region& region);
Verdict is_linearization_at_infinity(const LinearizationClaim& claim, int grade);
Verdict is_g_strong(const LinearizationClaim& claim, int grade);

/// Invariant orders at infinity of the grade-g target recovered from a pencil
/// whose reversal is minimal at 0.
InvariantOrders recover_infinite_orders(const SystemMatrix& pencil, int grade);

enum class StrongComparison {
    gG_strong,
    gG_plus_1_strong,
    not_g_strong_any_g,
    not_applicable,
};

struct StrongComparisonReport {
    StrongComparison verdict = StrongComparison::not_applicable;
    int grade = 0;        // resolved grade for the two strong cases
    std::string detail;
};

/// Classifies a pencil that is a strong linearization in the fixed-grade-free
/// sense (linearization everywhere, invertible leading state coefficient,
/// default-reversal equivalence at infinity) against the graded notion.
StrongComparisonReport classify_vs_strong(const SystemMatrix& pencil, const RatMatrix& target);

std::string to_string(StrongComparison c);

}  // namespace ratlin
