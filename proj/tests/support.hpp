#pragma once

#include "ratlin/pencils.hpp"

#include <random>

// Shared helpers for the test suites: tiny parsers-by-hand and random
// generators with a fixed seed so failures reproduce.
namespace testsupport {

using namespace ratlin;

inline Poly P(std::initializer_list<int> coeffs_low_first) {
    std::vector<Rat> v;
    for (int c : coeffs_low_first) v.emplace_back(c);
    return Poly{v};
}

inline Rat Q(int num, int den = 1) { return Rat(num, den); }

class Rng {
  public:
    explicit Rng(unsigned seed) : gen_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    Rat rat(int span = 3) {
        // Small numerators, occasionally non-integer.
        const int num = uniform(-span, span);
        const int den = uniform(0, 3) == 0 ? uniform(1, 2) : 1;
        return Rat(num, den);
    }

    Poly poly(int max_deg, int span = 3) {
        const int d = uniform(0, max_deg);
        std::vector<Rat> c(static_cast<std::size_t>(d) + 1);
        for (auto& x : c) x = rat(span);
        return Poly{c};
    }

    Poly nonzero_poly(int max_deg, int span = 3) {
        for (;;) {
            Poly p = poly(max_deg, span);
            if (!p.is_zero()) return p;
        }
    }

    RatFun ratfun(int max_deg = 3) {
        return {poly(max_deg), nonzero_poly(2)};
    }

    PolyMatrix polymatrix(std::size_t rows, std::size_t cols, int max_deg) {
        PolyMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = poly(max_deg);
        return m;
    }

    RatMatrix ratmatrix(std::size_t rows, std::size_t cols, int max_deg = 2) {
        RatMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = ratfun(max_deg);
        return m;
    }

    /// Random system matrix with a nonsingular state block in general position.
    SystemMatrix psm(std::size_t n, std::size_t p, std::size_t m, int max_deg) {
        for (;;) {
            PolyMatrix P(n + p, n + m);
            for (std::size_t i = 0; i < P.rows(); ++i)
                for (std::size_t j = 0; j < P.cols(); ++j) P.at(i, j) = poly(max_deg);
            std::vector<std::size_t> sr, sc;
            for (std::size_t i = 0; i < n; ++i) {
                sr.push_back(i);
                sc.push_back(i);
            }
            try {
                return make_psm(P, sr, sc);
            } catch (const std::invalid_argument&) {
                // singular state draw; retry
            }
        }
    }

  private:
    std::mt19937 gen_;
};

}  // namespace testsupport
