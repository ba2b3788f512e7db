#include "ratlin/poly.hpp"
#include "ratlin/detail/intpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ratlin {

std::optional<Rat> parse_rat(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    auto read_int = [&](Int& out) -> bool {
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return false;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        out = Int(text.substr(start, i - start));
        return true;
    };
    Int num;
    if (!read_int(num)) return std::nullopt;
    Int den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        if (!read_int(den) || den == 0) return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;
    Rat q(num, den);
    if (neg) q = -q;
    return q;
}

Poly::Poly(Rat constant) {
    if (constant != 0) c_.push_back(std::move(constant));
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(Rat c, int k) {
    if (c == 0) return {};
    if (k < 0) throw std::invalid_argument("monomial exponent must be nonnegative");
    std::vector<Rat> v(static_cast<std::size_t>(k) + 1, Rat(0));
    v.back() = std::move(c);
    return Poly{std::move(v)};
}

Poly Poly::linear_root(const Rat& a) { return Poly{{-a, Rat(1)}}; }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::optional<int> Poly::degree() const {
    if (c_.empty()) return std::nullopt;
    return static_cast<int>(c_.size()) - 1;
}

bool Poly::is_monic() const { return !c_.empty() && c_.back() == 1; }

Rat Poly::coeff(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= c_.size()) return Rat(0);
    return c_[static_cast<std::size_t>(k)];
}

Rat Poly::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = Rat(static_cast<int>(k)) * c_[k];
    return Poly{std::move(d)};
}

Poly Poly::monic() const {
    if (c_.empty()) return {};
    Rat inv = Rat(1) / c_.back();
    return inv * *this;
}

int Poly::root_multiplicity(const Rat& a) const {
    if (c_.empty()) throw std::domain_error("root multiplicity of zero polynomial");
    Poly rem = *this;
    const Poly lin = linear_root(a);
    int mult = 0;
    while (rem.eval(a) == 0) {
        rem = poly_exact_div(rem, lin);
        ++mult;
    }
    return mult;
}

Poly Poly::reversal(int g) const {
    if (c_.empty()) return {};
    const int d = *degree();
    if (g < d) throw std::invalid_argument("reversal grade below degree yields a non-polynomial");
    std::vector<Rat> v(static_cast<std::size_t>(g) + 1, Rat(0));
    for (int k = 0; k <= d; ++k) v[static_cast<std::size_t>(g - k)] = coeff(k);
    return Poly{std::move(v)};
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly{std::move(v)};
}

Poly operator*(const Rat& s, const Poly& p) {
    if (s == 0) return {};
    Poly r = p;
    for (auto& c : r.c_) c *= s;
    return r;
}

int Poly::compare(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size() ? -1 : 1;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] != o.c_[k]) return c_[k] < o.c_[k] ? -1 : 1;
    }
    return 0;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly rem = a;
    if (a.is_zero() || *a.degree() < *b.degree()) return {Poly{}, rem};
    const int db = *b.degree();
    const Rat lead_inv = Rat(1) / b.leading();
    std::vector<Rat> q(static_cast<std::size_t>(*a.degree() - db) + 1, Rat(0));
    while (!rem.is_zero() && *rem.degree() >= db) {
        const int k = *rem.degree() - db;
        const Rat c = rem.leading() * lead_inv;
        q[static_cast<std::size_t>(k)] = c;
        rem -= Poly::monomial(c, k) * b;
    }
    return {Poly{std::move(q)}, rem};
}

Poly poly_exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
    return q;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    // Primitive polynomial remainder sequence over the integers.
    std::vector<Int> x = intpoly::from_poly(a);
    std::vector<Int> y = intpoly::from_poly(b);
    intpoly::strip_content(x);
    intpoly::strip_content(y);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        std::vector<Int> r = intpoly::prem(x, y);
        intpoly::strip_content(r);
        x = std::move(y);
        y = std::move(r);
    }
    return intpoly::to_poly(x).monic();
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return poly_exact_div(a * b, poly_gcd(a, b)).monic();
}

PolyXgcd poly_xgcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(), s1 = Poly::zero();
    Poly t0 = Poly::zero(), t1 = Poly::one();
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        // Monic normalization of each remainder keeps the coefficient growth
        // of the cofactor chain polynomial.
        if (!r.is_zero()) {
            const Rat inv = Rat(1) / r.leading();
            r = inv * r;
            s2 = inv * s2;
            t2 = inv * t2;
        }
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const Rat lead_inv = Rat(1) / r0.leading();
    return {lead_inv * r0, lead_inv * s0, lead_inv * t0};
}

Poly poly_pow(const Poly& p, int e) {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    Poly acc = Poly::one();
    for (int i = 0; i < e; ++i) acc = acc * p;
    return acc;
}

std::vector<PolyFactor> squarefree_decomposition(const Poly& p) {
    std::vector<PolyFactor> out;
    if (p.is_constant()) return out;
    Poly f = p.monic();
    Poly g = poly_gcd(f, f.derivative());
    Poly w = poly_exact_div(f, g);
    Poly y = poly_exact_div(f.derivative(), g);
    Poly z = y - w.derivative();
    int i = 1;
    while (!w.is_constant()) {
        Poly s = poly_gcd(w, z);
        if (!s.is_constant()) out.push_back({s, i});
        w = poly_exact_div(w, s);
        if (w.is_constant()) break;
        y = poly_exact_div(z, s);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

namespace {

bool miller_rabin(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = boost::multiprecision::powm(Int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < r - 1; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    Int x = 2, y = 2, c = 1;
    while (true) {
        x = 2;
        y = 2;
        Int d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = boost::multiprecision::gcd(x >= y ? x - y : y - x, n);
        }
        if (d != n) return d;
        ++c;
    }
}

void factor_int(Int n, std::map<Int, int>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (int p : {2, 3, 5, 7, 11, 13}) {
        while (n % p == 0) {
            ++out[Int(p)];
            n /= p;
        }
    }
    if (n == 1) return;
    if (miller_rabin(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_int(d, out);
    factor_int(n / d, out);
}

std::vector<Int> positive_divisors(const Int& n) {
    std::map<Int, int> fac;
    factor_int(n, fac);
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : fac) {
        const std::size_t base = divs.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

// Rational roots of a squarefree monic rational polynomial.
std::vector<Rat> squarefree_rational_roots(const Poly& s) {
    std::vector<Rat> roots;
    if (s.is_constant()) return roots;
    if (s.coeff(0) == 0) roots.push_back(Rat(0));
    // Clear denominators to an integer polynomial.
    Int den_lcm = 1;
    for (const auto& c : s.coeffs()) den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(c));
    std::vector<Int> ic(s.coeffs().size());
    for (std::size_t k = 0; k < ic.size(); ++k) {
        const Rat c = s.coeffs()[k];
        ic[k] = rat_num(c) * (den_lcm / rat_den(c));
    }
    std::size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low + 1 >= ic.size()) return roots;  // at most the root 0, already recorded
    const Int a0 = ic[low];
    const Int ad = ic.back();
    for (const Int& p : positive_divisors(a0)) {
        for (const Int& q : positive_divisors(ad)) {
            for (int sign : {1, -1}) {
                Rat cand(sign * p, q);
                if (s.eval(cand) == 0) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace

std::vector<std::pair<Rat, int>> rational_roots(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("rational roots of zero polynomial");
    std::vector<std::pair<Rat, int>> out;
    for (const auto& part : squarefree_decomposition(p)) {
        for (const Rat& r : squarefree_rational_roots(part.base)) out.emplace_back(r, part.multiplicity);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FactoredPoly factor_poly(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("factorization of zero polynomial");
    FactoredPoly f;
    f.lead = p.leading();
    for (const auto& part : squarefree_decomposition(p)) {
        Poly rest = part.base;
        for (const Rat& r : squarefree_rational_roots(part.base)) {
            f.factors.push_back({Poly::linear_root(r), part.multiplicity});
            rest = poly_exact_div(rest, Poly::linear_root(r));
        }
        if (!rest.is_constant()) f.factors.push_back({rest.monic(), part.multiplicity});
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const PolyFactor& a, const PolyFactor& b) { return a.base.compare(b.base) < 0; });
    return f;
}

int FactoredPoly::multiplicity_at(const Rat& a) const {
    for (const auto& fac : factors) {
        if (fac.base == Poly::linear_root(a)) return fac.multiplicity;
    }
    return 0;
}

std::vector<std::pair<Rat, int>> FactoredPoly::rational_roots() const {
    std::vector<std::pair<Rat, int>> out;
    for (const auto& fac : factors) {
        if (fac.base.degree() == 1 && fac.base.is_monic()) out.emplace_back(-fac.base.coeff(0), fac.multiplicity);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PolyFactor> FactoredPoly::nonlinear_factors() const {
    std::vector<PolyFactor> out;
    for (const auto& fac : factors) {
        if (*fac.base.degree() > 1) out.push_back(fac);
    }
    return out;
}

Poly FactoredPoly::expand() const {
    Poly acc{lead};
    for (const auto& fac : factors) acc = acc * poly_pow(fac.base, fac.multiplicity);
    return acc;
}

std::vector<Poly> coprime_basis(std::vector<Poly> polys) {
    // Invariant: basis elements are monic, squarefree and pairwise coprime.
    std::vector<Poly> basis;
    for (const Poly& p : polys) {
        if (p.is_zero() || p.is_constant()) continue;
        Poly q = poly_exact_div(p.monic(), poly_gcd(p, p.derivative())).monic();  // radical
        std::size_t i = 0;
        while (i < basis.size() && !q.is_constant()) {
            Poly g = poly_gcd(q, basis[i]);
            if (g.is_constant()) {
                ++i;
                continue;
            }
            if (g == basis[i]) {
                q = poly_exact_div(q, g).monic();
                ++i;
                continue;
            }
            Poly rest = poly_exact_div(basis[i], g).monic();
            basis[i] = g;
            basis.insert(basis.begin() + static_cast<std::ptrdiff_t>(i) + 1, rest);
            q = poly_exact_div(q, g).monic();
            i += 2;  // q is squarefree, so it is now coprime to both pieces
        }
        if (!q.is_constant()) basis.push_back(q);
    }
    std::sort(basis.begin(), basis.end(), [](const Poly& a, const Poly& b) { return a.compare(b) < 0; });
    return basis;
}

int divisor_multiplicity(const Poly& p, const Poly& d) {
    if (p.is_zero()) throw std::domain_error("divisor multiplicity in zero polynomial");
    if (d.is_constant()) throw std::invalid_argument("divisor must be nonconstant");
    int mult = 0;
    Poly rest = p;
    while (true) {
        auto [q, r] = poly_divmod(rest, d);
        if (!r.is_zero()) break;
        rest = q;
        ++mult;
        if (rest.is_constant()) break;
    }
    return mult;
}

std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = *p.degree(); k >= 0; --k) {
        Rat c = p.coeff(k);
        if (c == 0) continue;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? "-" : "+");
            if (c < 0) c = -c;
        }
        first = false;
        if (k == 0) {
            os << rat_to_string(c);
        } else {
            if (c != 1) os << rat_to_string(c) << "*";
            os << "l";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace ratlin
