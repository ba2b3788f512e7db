#pragma once

#include "ratlin/poly.hpp"

#include <vector>

// Integer polynomial kernel shared by the gcd and matrix elimination paths.
// Coefficients are plain cpp_int (lowest degree first, trimmed); keeping the
// inner loops free of rational normalization is what makes exact Smith forms
// of dense matrices affordable.
namespace ratlin::intpoly {

using IPoly = std::vector<Int>;

inline void trim(IPoly& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline int deg(const IPoly& v) { return static_cast<int>(v.size()) - 1; }

inline IPoly from_poly(const Poly& p) {
    Int den_lcm = 1;
    for (const Rat& c : p.coeffs()) den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(c));
    IPoly out(p.coeffs().size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const Rat& c = p.coeffs()[k];
        out[k] = rat_num(c) * (den_lcm / rat_den(c));
    }
    return out;
}

inline Poly to_poly(const IPoly& v) {
    std::vector<Rat> c(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) c[k] = Rat(v[k]);
    return Poly{c};
}

inline Int content(const IPoly& v) {
    Int g = 0;
    for (const Int& c : v) g = boost::multiprecision::gcd(g, c);
    return g;
}

inline void strip_content(IPoly& v) {
    const Int g = content(v);
    if (g > 1)
        for (Int& c : v) c /= g;
    if (!v.empty() && v.back() < 0)
        for (Int& c : v) c = -c;
}

inline IPoly mul(const IPoly& a, const IPoly& b) {
    if (a.empty() || b.empty()) return {};
    IPoly out(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline IPoly sub(IPoly a, const IPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
    trim(a);
    return a;
}

/// r := lead(p) * r - lead(r) * l^shift * p  (one pseudo-reduction step).
inline void reduce_step(IPoly& r, const IPoly& p) {
    const Int lp = p.back();
    const Int lr = r.back();
    const std::size_t shift = r.size() - p.size();
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] *= lp;
        if (k >= shift && k - shift < p.size()) r[k] -= lr * p[k - shift];
    }
    trim(r);
}

/// Pseudo-remainder of a modulo p; zero iff p divides a over the rationals.
inline IPoly prem(IPoly a, const IPoly& p) {
    while (!a.empty() && a.size() >= p.size()) reduce_step(a, p);
    return a;
}

/// Exact division for the fraction-free elimination: requires b | a in Z[l].
inline IPoly exact_div(IPoly a, const IPoly& b) {
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::domain_error("integer polynomial division is not exact");
    IPoly q(a.size() - b.size() + 1, Int(0));
    const Int lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const Int la = a.back();
        if (la % lb != 0) throw std::domain_error("integer polynomial division is not exact");
        const Int c = la / lb;
        const std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
        trim(a);
    }
    if (!a.empty()) throw std::domain_error("integer polynomial division is not exact");
    return q;
}

}  // namespace ratlin::intpoly
