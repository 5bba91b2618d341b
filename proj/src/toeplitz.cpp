#include <isingser/toeplitz.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <isingser/transforms.hpp>

namespace isingser {

namespace {

TruncatedSeries chart_poly(Var var, std::vector<Rational> coeffs, int order) {
  coeffs.resize(static_cast<size_t>(order) + 1);
  return TruncatedSeries(var, 0, order, std::move(coeffs));
}

// Small elliptic modulus on either side of criticality: 4c/(1-c)^2.
TruncatedSeries modulus_series(Var var, int order) {
  TruncatedSeries denom = chart_poly(var, {Rational(1), Rational(-2), Rational(1)}, order);
  return mul_monomial(reciprocal(denom), 1, Rational(4));
}

// Laurent coefficients a_m, |m| <= n, of sqrt((1-ks)/(1-k/s)) as chart
// series; returned with a[m + n] holding a_m.
std::vector<TruncatedSeries> symbol_coeffs(const TruncatedSeries& k, int n, int order) {
  const Var var = k.var();
  // numerator expands in s^j, denominator in s^-j; both scale by k^j so only
  // j <= order contributes.
  std::vector<TruncatedSeries> upper, lower;
  TruncatedSeries kpow = TruncatedSeries::constant(var, 1, order);
  Rational cu(1), cl(1);  // C(1/2,j)(-1)^j and C(-1/2,j)(-1)^j
  for (int j = 0; j <= order; ++j) {
    if (j > 0) {
      kpow = mul(kpow, k);
      cu *= -(Rational(1, 2) - (j - 1)) / j;
      cl *= -(Rational(-1, 2) - (j - 1)) / j;
    }
    upper.push_back(mul_monomial(kpow, 0, cu));
    lower.push_back(mul_monomial(kpow, 0, cl));
  }
  std::vector<TruncatedSeries> a;
  a.reserve(2 * static_cast<size_t>(n) + 1);
  for (int m = -n; m <= n; ++m) {
    TruncatedSeries acc = TruncatedSeries::zero(var, order);
    for (int j = std::max(0, -m); j <= order && m + j <= order; ++j)
      acc = add(acc, mul(upper[static_cast<size_t>(m + j)], lower[static_cast<size_t>(j)]));
    a.push_back(std::move(acc));
  }
  return a;
}

// Determinant over the series ring by expansion on column subsets.
TruncatedSeries det_series(const std::vector<std::vector<TruncatedSeries>>& m, Var var,
                           int order) {
  const size_t n = m.size();
  if (n == 0) return TruncatedSeries::constant(var, 1, order);
  std::vector<TruncatedSeries> dp(size_t{1} << n, TruncatedSeries::zero(var, order));
  dp[0] = TruncatedSeries::constant(var, 1, order);
  for (uint32_t s = 1; s < (uint32_t{1} << n); ++s) {
    const size_t row = static_cast<size_t>(__builtin_popcount(s)) - 1;
    TruncatedSeries acc = TruncatedSeries::zero(var, order);
    int pos = 0;
    for (uint32_t bits = s; bits; bits &= bits - 1, ++pos) {
      const int col = __builtin_ctz(bits);
      TruncatedSeries term = mul(m[row][static_cast<size_t>(col)], dp[s & ~(uint32_t{1} << col)]);
      acc = ((row + static_cast<size_t>(pos)) % 2 == 0) ? add(acc, term) : sub(acc, term);
    }
    dp[s] = std::move(acc);
  }
  return dp[(size_t{1} << n) - 1];
}

TruncatedSeries dn_determinant(Var var, int n, int order, int index_shift, bool negate) {
  const TruncatedSeries k = modulus_series(var, order);
  const std::vector<TruncatedSeries> a = symbol_coeffs(k, n + 1, order);
  std::vector<std::vector<TruncatedSeries>> m(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    m[static_cast<size_t>(i)].reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      TruncatedSeries entry = a[static_cast<size_t>(i - j + index_shift + n + 1)];
      if (negate) entry = mul_monomial(entry, 0, Rational(-1));
      m[static_cast<size_t>(i)].push_back(std::move(entry));
    }
  }
  return det_series(m, var, order);
}

// Coefficients of (1 - m s)^(e/2) in s through s^jmax; e is -1 or +1 here
// but any odd e would do. Coefficient j is binom(e/2, j) (-m)^j.
std::vector<TruncatedSeries> half_power_factor(const TruncatedSeries& m, int e, int jmax) {
  const Var var = m.var();
  const int order = static_cast<int>(m.order());
  std::vector<TruncatedSeries> c;
  c.reserve(static_cast<size_t>(jmax) + 1);
  TruncatedSeries mpow = TruncatedSeries::constant(var, 1, order);
  const Rational half(e, 2);
  Rational coef(1);
  for (int j = 0; j <= jmax; ++j) {
    if (j > 0) {
      mpow = mul(mpow, m);
      coef *= (half - (j - 1)) / j;
    }
    c.push_back(mul_monomial(mpow, 0, (j % 2 != 0) ? -coef : coef));
  }
  return c;
}

// (1 - a s)^(ea/2) (1 - b s)^(eb/2) expanded in s. The bases have positive
// valuation, so coefficient j carries chart valuation >= j and jmax at the
// chart order plus matrix reach is exact, not an approximation.
std::vector<TruncatedSeries> direction_factors(const TruncatedSeries& a, const TruncatedSeries& b,
                                               int ea, int eb, int jmax) {
  const std::vector<TruncatedSeries> fa = half_power_factor(a, ea, jmax);
  const std::vector<TruncatedSeries> fb = half_power_factor(b, eb, jmax);
  const Var var = a.var();
  const int order = static_cast<int>(a.order());
  std::vector<TruncatedSeries> c(static_cast<size_t>(jmax) + 1,
                                 TruncatedSeries::zero(var, order));
  for (int j = 0; j <= jmax; ++j) {
    TruncatedSeries acc = TruncatedSeries::zero(var, order);
    for (int i = 0; i <= j; ++i)
      acc = add(acc, mul(fa[static_cast<size_t>(i)], fb[static_cast<size_t>(j - i)]));
    c[static_cast<size_t>(j)] = std::move(acc);
  }
  return c;
}

// Laurent coefficient m of the product of an upward expansion (in s) and a
// downward one (in 1/s): sum over l of up[m+l] low[l].
TruncatedSeries laurent_coeff(const std::vector<TruncatedSeries>& up,
                              const std::vector<TruncatedSeries>& low, int m) {
  const Var var = up.front().var();
  const int order = static_cast<int>(up.front().order());
  TruncatedSeries acc = TruncatedSeries::zero(var, order);
  for (int l = std::max(0, -m);
       l < static_cast<int>(low.size()) && m + l < static_cast<int>(up.size()); ++l)
    acc = add(acc, mul(up[static_cast<size_t>(m + l)], low[static_cast<size_t>(l)]));
  return acc;
}

TruncatedSeries ratio_poly(Var var, std::vector<Rational> num, std::vector<Rational> den,
                           int order) {
  return divide(chart_poly(var, std::move(num), order), chart_poly(var, std::move(den), order));
}

void require_integer_coeffs(const TruncatedSeries& s, const char* what) {
  for (long e = s.min_exp(); e <= s.order(); ++e) {
    if (denominator(s.coeff(e)) != 1) throw std::logic_error(what);
  }
}

}  // namespace

Int central_binomial(int n) {
  Int r = 1;
  for (int i = 1; i <= n; ++i) r = r * (n + i) / i;
  return r;
}

TruncatedSeries dn_ht_series(int n, int order) {
  if (n < 0) throw std::invalid_argument("diagonal separation must be >= 0");
  if (order < n) throw OrderTooSmall("order below the leading exponent");
  if (n == 0) return TruncatedSeries::constant(Var::x, 1, order);
  TruncatedSeries d = dn_determinant(Var::x, n, order, 1, true);
  if (d.min_exp() != n || numerator(d.leading()) != central_binomial(n) ||
      denominator(d.leading()) != 1)
    throw std::logic_error("diagonal determinant lost its leading central binomial");
  require_integer_coeffs(d, "diagonal series coefficient not an integer");
  return d;
}

TruncatedSeries dn_lt_series(int n, int order) {
  if (n < 0) throw std::invalid_argument("diagonal separation must be >= 0");
  if (order < 0) throw OrderTooSmall("negative order");
  if (n == 0) return TruncatedSeries::constant(Var::u, 1, order);
  TruncatedSeries d = dn_determinant(Var::u, n, order, 0, false);
  if (d.min_exp() != 0 || d.coeff(0) != 1)
    throw std::logic_error("low-temperature diagonal series must start at 1");
  require_integer_coeffs(d, "diagonal series coefficient not an integer");
  return d;
}

TruncatedSeries rn_ht_series(int n, int order) {
  if (n < 0) throw std::invalid_argument("row separation must be >= 0");
  if (order < n) throw OrderTooSmall("order below the leading exponent");
  if (n == 0) return TruncatedSeries::constant(Var::v, 1, order);
  const int jmax = order + n + 2;
  const TruncatedSeries a =
      mul_monomial(ratio_poly(Var::v, {Rational(1), Rational(-1)},
                              {Rational(1), Rational(1)}, order),
                   1, Rational(1));
  const TruncatedSeries b =
      mul_monomial(ratio_poly(Var::v, {Rational(1), Rational(1)},
                              {Rational(1), Rational(-1)}, order),
                   1, Rational(1));
  // Both roots sit upstairs going up and downstairs going down; the winding
  // factor that makes that possible is exactly the shifted, negated index.
  const std::vector<TruncatedSeries> up = direction_factors(a, b, 1, 1, jmax);
  const std::vector<TruncatedSeries> low = direction_factors(a, b, -1, -1, jmax);
  std::vector<std::vector<TruncatedSeries>> m(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    m[static_cast<size_t>(i)].reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      m[static_cast<size_t>(i)].push_back(
          mul_monomial(laurent_coeff(up, low, i - j + 1), 0, Rational(-1)));
  }
  TruncatedSeries d = det_series(m, Var::v, order);
  if (d.min_exp() != n || d.coeff(n) != 1)
    throw std::logic_error("row determinant lost its leading term v^n");
  require_integer_coeffs(d, "row series coefficient not an integer");
  return d;
}

TruncatedSeries rn_lt_series(int n, int order) {
  if (n < 0) throw std::invalid_argument("row separation must be >= 0");
  if (order < 0) throw OrderTooSmall("negative order");
  if (n == 0) return TruncatedSeries::constant(Var::u, 1, order);
  const int zord = std::max(2 * order, 2);
  const int jmax = zord + n + 2;
  const TruncatedSeries a1 =
      mul_monomial(ratio_poly(Var::z, {Rational(1), Rational(-1)},
                              {Rational(1), Rational(1)}, zord),
                   1, Rational(1));
  const TruncatedSeries a2 =
      mul_monomial(ratio_poly(Var::z, {Rational(1), Rational(1)},
                              {Rational(1), Rational(-1)}, zord),
                   1, Rational(1));
  const std::vector<TruncatedSeries> up = direction_factors(a1, a2, 1, -1, jmax);
  const std::vector<TruncatedSeries> low = direction_factors(a2, a1, 1, -1, jmax);
  std::vector<std::vector<TruncatedSeries>> m(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    m[static_cast<size_t>(i)].reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      m[static_cast<size_t>(i)].push_back(laurent_coeff(up, low, i - j));
  }
  TruncatedSeries d = det_series(m, Var::z, zord);
  // halving faults on any surviving odd power, which would mean the symbol
  // pair lost its duality symmetry
  TruncatedSeries out = truncate(halve_exponents(d, Var::u), order);
  if (out.min_exp() != 0 || out.coeff(0) != 1)
    throw std::logic_error("low-temperature row series must start at 1");
  require_integer_coeffs(out, "row series coefficient not an integer");
  return out;
}

}  // namespace isingser
