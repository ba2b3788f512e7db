#include "ratlin/ratfun.hpp"

namespace ratlin {

RatFun::RatFun(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("division by zero polynomial");
    if (num.is_zero()) {
        num_ = Poly::zero();
        den_ = Poly::one();
        return;
    }
    const Poly g = poly_gcd(num, den);
    num = poly_exact_div(num, g);
    den = poly_exact_div(den, g);
    const Rat lead_inv = Rat(1) / den.leading();
    num_ = lead_inv * num;
    den_ = lead_inv * den;
}

bool RatFun::is_proper() const {
    if (num_.is_zero()) return true;
    return *num_.degree() <= *den_.degree();
}

bool RatFun::is_strictly_proper() const {
    if (num_.is_zero()) return true;
    return *num_.degree() < *den_.degree();
}

bool RatFun::is_biproper() const {
    if (num_.is_zero()) return false;
    return *num_.degree() == *den_.degree();
}

Rat RatFun::eval(const Rat& x) const {
    const Rat d = den_.eval(x);
    if (d == 0) throw std::domain_error("rational function is not defined at the point");
    return num_.eval(x) / d;
}

std::optional<int> RatFun::valuation_at(const Rat& a) const {
    if (num_.is_zero()) return std::nullopt;
    return num_.root_multiplicity(a) - den_.root_multiplicity(a);
}

std::optional<int> RatFun::valuation_at_infinity() const {
    if (num_.is_zero()) return std::nullopt;
    return *den_.degree() - *num_.degree();
}

RatFun RatFun::g_reversal(int g) const {
    if (num_.is_zero()) return RatFun{};
    const int dn = *num_.degree();
    const int dd = *den_.degree();
    // l^g * num(1/l)/den(1/l) = l^(g + dd - dn) * rev(num)/rev(den).
    Poly rn = num_.reversal(dn);
    Poly rd = den_.reversal(dd);
    const int shift = g + dd - dn;
    if (shift >= 0) return {Poly::monomial(Rat(1), shift) * rn, rd};
    return {rn, Poly::monomial(Rat(1), -shift) * rd};
}

std::pair<Poly, RatFun> RatFun::split_polynomial_part() const {
    auto [q, r] = poly_divmod(num_, den_);
    return {q, RatFun(r, den_)};
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RatFun operator-(const RatFun& a, const RatFun& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RatFun operator*(const RatFun& a, const RatFun& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string ratfun_to_string(const RatFun& f) {
    if (f.is_polynomial()) return poly_to_string(f.num());
    return poly_to_string(f.num()) + " / " + poly_to_string(f.den());
}

}  // namespace ratlin
