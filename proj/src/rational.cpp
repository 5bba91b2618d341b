#include "isingser/rational.hpp"

#include <gmp.h>

namespace isingser {

std::optional<Int> exact_root(const Int& n, unsigned long k) {
  if (k == 0) throw std::invalid_argument("exact_root: k must be >= 1");
  if (k == 1) return n;
  if (n < 0 && k % 2 == 0) return std::nullopt;
  Int r;
  int exact = mpz_root(r.backend().data(), n.backend().data(), k);
  if (!exact) return std::nullopt;
  return r;
}

std::optional<Rational> exact_pow(const Rational& q, long num, unsigned long den) {
  if (den == 0) throw std::invalid_argument("exact_pow: denominator must be >= 1");
  if (q == 0) {
    if (num == 0) return Rational(1);
    if (num < 0) return std::nullopt;
    return Rational(0);
  }
  unsigned long abs_num = num < 0 ? static_cast<unsigned long>(-num)
                                  : static_cast<unsigned long>(num);
  Int p = pow_int(numerator(q), abs_num);
  Int d = pow_int(denominator(q), abs_num);
  if (num < 0) std::swap(p, d);
  if (d < 0) { p = -p; d = -d; }
  auto rp = exact_root(p, den);
  auto rd = exact_root(d, den);
  if (!rp || !rd) return std::nullopt;
  return Rational(*rp) / Rational(*rd);
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.backend().data(), base.backend().data(), e);
  return r;
}

Rational pow_rational_int(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0 && e < 0) throw std::domain_error("0 to a negative power");
  unsigned long a = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational r(pow_int(numerator(base), a), pow_int(denominator(base), a));
  if (e < 0) r = 1 / r;
  return r;
}

std::string to_string(const Rational& q) { return q.str(); }

Rational rational_from_string(const std::string& s) { return Rational(s); }

}  // namespace isingser
