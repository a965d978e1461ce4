#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace psint {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "3", "-2", "3/4", "0.68", "1.25e-3", and ratios of decimals like
// "1/48.08".  Decimals are converted exactly (0.68 -> 17/25).
Rational parse_rational(const std::string& text);
std::optional<Rational> try_parse_rational(const std::string& text);

// Greedy prefix parse of "number [/ number]" starting at i; advances i past
// what was consumed.  No surrounding whitespace handling.
std::optional<Rational> parse_rational_prefix(const std::string& s, size_t& i);

// "p/q" in lowest terms, or just "p" when q = 1.
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

inline int sign_of(const Rational& r) { return r.sign(); }

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// floor(a/b) for b > 0
BigInt floor_div(const BigInt& a, const BigInt& b);

// largest s with s*s <= n (n >= 0)
BigInt isqrt(const BigInt& n);

// exact square root if r is a perfect square of a rational, else nullopt
std::optional<Rational> exact_sqrt(const Rational& r);

}  // namespace psint
