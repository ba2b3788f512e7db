#pragma once

#include "ratlin/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ratlin {

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial is the empty coefficient list; its degree is
/// reported as an empty optional, never as a reserved integer.
class Poly {
  public:
    Poly() = default;
    explicit Poly(Rat constant);
    explicit Poly(std::vector<Rat> coeffs);  // trims trailing zeros

    static Poly zero() { return Poly{}; }
    static Poly one() { return Poly{Rat(1)}; }
    // c * l^k
    static Poly monomial(Rat c, int k);
    // l - a
    static Poly linear_root(const Rat& a);

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] std::optional<int> degree() const;
    [[nodiscard]] bool is_constant() const { return c_.size() <= 1; }
    [[nodiscard]] bool is_monic() const;

    [[nodiscard]] const std::vector<Rat>& coeffs() const { return c_; }
    /// Coefficient of l^k (0 outside the stored range).
    [[nodiscard]] Rat coeff(int k) const;
    [[nodiscard]] Rat leading() const;  // nonzero; throws on zero polynomial

    [[nodiscard]] Rat eval(const Rat& x) const;
    [[nodiscard]] Poly derivative() const;
    [[nodiscard]] Poly monic() const;  // zero stays zero

    /// Multiplicity of (l - a) as a factor; 0 when p(a) != 0. Throws on zero polynomial.
    [[nodiscard]] int root_multiplicity(const Rat& a) const;

    /// l^g * p(1/l); requires g >= deg(p) so the result is polynomial.
    [[nodiscard]] Poly reversal(int g) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rat& s, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) = default;

    /// Deterministic total order (degree, then coefficients); used for canonical sorting.
    [[nodiscard]] int compare(const Poly& o) const;

  private:
    void trim();
    std::vector<Rat> c_;
};

/// Euclidean division: a = q*b + r with deg r < deg b. b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
/// Division that must be exact; throws if a remainder appears.
Poly poly_exact_div(const Poly& a, const Poly& b);

/// Monic gcd; errors when both arguments are zero.
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_lcm(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& p, int e);

/// Extended gcd: g monic with s*a + t*b = g.
struct PolyXgcd {
    Poly g, s, t;
};
PolyXgcd poly_xgcd(const Poly& a, const Poly& b);

/// One factor of a canonical factorization: base^multiplicity with base monic.
struct PolyFactor {
    Poly base;
    int multiplicity = 0;
};

/// Canonical partial factorization over Q: leading coefficient times linear
/// factors (l - a)^k plus squarefree factors without rational roots. The
/// non-linear parts are not split further; squarefree decomposition plus
/// rational-root extraction make the result canonical.
struct FactoredPoly {
    Rat lead;
    std::vector<PolyFactor> factors;  // monic, pairwise coprime, canonical order

    [[nodiscard]] int multiplicity_at(const Rat& a) const;
    [[nodiscard]] std::vector<std::pair<Rat, int>> rational_roots() const;
    [[nodiscard]] std::vector<PolyFactor> nonlinear_factors() const;
    [[nodiscard]] Poly expand() const;
};

FactoredPoly factor_poly(const Poly& p);

/// Yun squarefree decomposition: p = lead * prod s_i^i, s_i monic squarefree
/// pairwise coprime; entries with s_i = 1 are omitted.
std::vector<PolyFactor> squarefree_decomposition(const Poly& p);

/// All rational roots of p (with multiplicities). p nonzero.
std::vector<std::pair<Rat, int>> rational_roots(const Poly& p);

/// Pairwise-coprime monic basis spanning the multiplicative content of the
/// inputs: every input is a product of powers of basis elements (times a
/// constant). Constant inputs are ignored.
std::vector<Poly> coprime_basis(std::vector<Poly> polys);

/// Multiplicity of a (nonconstant) divisor d in p: largest k with d^k | p.
int divisor_multiplicity(const Poly& p, const Poly& d);

std::string poly_to_string(const Poly& p);

}  // namespace ratlin
