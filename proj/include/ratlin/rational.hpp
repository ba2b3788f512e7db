#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace ratlin {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar. cpp_rational keeps gcd(num,den)=1 and den>0.
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

// "p" or "p/q", minus sign in front.
inline std::string rat_to_string(const Rat& q) {
    if (is_integer(q)) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

// Accepts "p", "p/q", optional leading +/-.
std::optional<Rat> parse_rat(const std::string& text);

// Throwing variant for contexts where the text is required to be valid.
inline Rat parse_rat_or_throw(const std::string& text) {
    auto q = parse_rat(text);
    if (!q) throw std::invalid_argument("invalid rational literal: '" + text + "'");
    return *q;
}

}  // namespace ratlin
