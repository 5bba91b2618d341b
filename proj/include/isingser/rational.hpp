#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace isingser {

using Int = boost::multiprecision::mpz_int;
// mpq_rational keeps values canonical: lowest terms, positive denominator.
using Rational = boost::multiprecision::mpq_rational;

inline Int numerator(const Rational& q) { return Int(boost::multiprecision::numerator(q)); }
inline Int denominator(const Rational& q) { return Int(boost::multiprecision::denominator(q)); }

// Exact k-th root, or nullopt if n is not a perfect k-th power.
// k must be >= 1; negative n allowed for odd k.
std::optional<Int> exact_root(const Int& n, unsigned long k);

// Exact q^(num/den), or nullopt when the result is irrational.
// den must be >= 1. Negative base with even den -> nullopt.
std::optional<Rational> exact_pow(const Rational& q, long num, unsigned long den);

Int pow_int(const Int& base, unsigned long e);
Rational pow_rational_int(const Rational& base, long e);

// "3/4", "-1", "0"
std::string to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

}  // namespace isingser
