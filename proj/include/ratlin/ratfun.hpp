#pragma once

#include "ratlin/poly.hpp"

#include <optional>
#include <string>

namespace ratlin {

/// A finite point of the field or the point at infinity.
class Point {
  public:
    static Point infinity() { return Point(true, Rat(0)); }
    static Point at(Rat v) { return Point(false, std::move(v)); }

    [[nodiscard]] bool is_infinity() const { return inf_; }
    [[nodiscard]] const Rat& value() const {
        if (inf_) throw std::domain_error("value() on the point at infinity");
        return v_;
    }
    friend bool operator==(const Point& a, const Point& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    [[nodiscard]] std::string to_string() const { return inf_ ? "inf" : rat_to_string(v_); }

  private:
    Point(bool inf, Rat v) : inf_(inf), v_(std::move(v)) {}
    bool inf_;
    Rat v_;
};

/// Reduced rational function: monic denominator, gcd(num, den) = 1, zero is 0/1.
class RatFun {
  public:
    RatFun() : num_(), den_(Poly::one()) {}
    RatFun(Rat constant) : num_(Poly{std::move(constant)}), den_(Poly::one()) {}  // NOLINT(google-explicit-constructor)
    RatFun(Poly num, Poly den);  // reduces; throws on zero denominator
    explicit RatFun(Poly p) : num_(std::move(p)), den_(Poly::one()) {}

    [[nodiscard]] const Poly& num() const { return num_; }
    [[nodiscard]] const Poly& den() const { return den_; }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    [[nodiscard]] bool is_polynomial() const { return den_ == Poly::one(); }

    [[nodiscard]] bool is_proper() const;
    [[nodiscard]] bool is_strictly_proper() const;
    [[nodiscard]] bool is_biproper() const;

    [[nodiscard]] bool defined_at(const Rat& x) const { return den_.eval(x) != 0; }
    /// Value at a point where the function is defined.
    [[nodiscard]] Rat eval(const Rat& x) const;

    /// Order k with f = (l-a)^k * u, u finite and nonzero at a; empty for f = 0 (+infinity).
    [[nodiscard]] std::optional<int> valuation_at(const Rat& a) const;
    /// deg(den) - deg(num); empty for f = 0. Nonnegative iff proper, zero iff biproper.
    [[nodiscard]] std::optional<int> valuation_at_infinity() const;

    /// l^g * f(1/l).
    [[nodiscard]] RatFun g_reversal(int g) const;

    /// Polynomial part and strictly proper part, f = q + sp (entrywise Euclidean split).
    [[nodiscard]] std::pair<Poly, RatFun> split_polynomial_part() const;

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    friend bool operator==(const RatFun& a, const RatFun& b) = default;

  private:
    Poly num_;
    Poly den_;
};

inline RatFun reduce(Poly num, Poly den) { return RatFun(std::move(num), std::move(den)); }

std::string ratfun_to_string(const RatFun& f);

}  // namespace ratlin
