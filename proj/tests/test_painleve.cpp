#include <doctest.h>

#include <vector>

#include <isingser/oracle_lt.hpp>
#include <isingser/painleve.hpp>
#include <isingser/polyfit.hpp>
#include <isingser/series.hpp>

using namespace isingser;

TEST_CASE("determinant route matches the subgraph oracles") {
  CHECK(dn_ht_series(1, 8) == dn_ht_series_oracle(1, 8));
  CHECK(dn_ht_series(2, 7) == dn_ht_series_oracle(2, 7));
  CHECK(dn_ht_series(3, 6) == dn_ht_series_oracle(3, 6));

  CHECK(dn_lt_series(1, 8) == dn_lt_series_oracle(1, 8));
  CHECK(dn_lt_series(2, 8) == dn_lt_series_oracle(2, 8));
}

TEST_CASE("diagonal series structure") {
  const long binom[] = {2, 6, 20, 70, 252, 924};
  for (int n = 1; n <= 6; ++n) {
    TruncatedSeries d = dn_ht_series(n, n);
    CHECK(d.min_exp() == n);
    CHECK(d.coeff(n) == binom[n - 1]);
  }
  CHECK(dn_ht_series(0, 5) == TruncatedSeries::constant(Var::x, 1, 5));
  CHECK(dn_lt_series(0, 5) == TruncatedSeries::constant(Var::u, 1, 5));
  CHECK_THROWS_AS(dn_ht_series(3, 2), OrderTooSmall);

  TruncatedSeries d1 = dn_ht_series(1, 8);
  const long d1_coeffs[] = {2, 4, 10, 32, 118, 476, 2038, 9104};
  for (int e = 1; e <= 8; ++e) CHECK(d1.coeff(e) == d1_coeffs[e - 1]);

  TruncatedSeries l1 = dn_lt_series(1, 8);
  const long l1_coeffs[] = {1, 0, -4, -16, -52, -176, -652, -2624, -11236};
  for (int e = 0; e <= 8; ++e) CHECK(l1.coeff(e) == l1_coeffs[e]);
}

TEST_CASE("low-temperature diagonal agrees with the magnetization plateau") {
  // D_n - M^2 vanishes through u^(2n+1); the first deviation is the
  // connected part, which the lattice oracle computes independently.
  for (int n = 2; n <= 4; ++n)
    CHECK(sub(dn_lt_series(n, 2 * n + 1), magnetization_squared(2 * n + 1)).is_zero());
  CHECK(sub(dn_lt_series(2, 6), magnetization_squared(6)) ==
        lt_series_connected(CorrelationId::diagonal(2), 6));
}

TEST_CASE("ratio closed forms hold exactly") {
  const std::vector<RatioCheck> checks = check_ratio_formulas(1, 4, 5);
  REQUIRE(checks.size() == 20);
  for (const auto& rc : checks) CHECK(rc.match);

  const long n1_values[] = {2, 5, 16, 59, 238};
  for (int ell = 1; ell <= 5; ++ell) {
    CHECK(checks[static_cast<size_t>(ell - 1)].n == 1);
    CHECK(checks[static_cast<size_t>(ell - 1)].measured == n1_values[ell - 1]);
  }

  CHECK_THROWS_AS(check_ratio_formulas(1, 4, 6), std::invalid_argument);
  CHECK_THROWS_AS(check_ratio_formulas(0, 4, 2), std::invalid_argument);

  // the ell=2 family refit from scratch with the prescribed denominator n+1
  std::vector<FitPoint> pts;
  for (int n = 1; n <= 7; ++n) {
    TruncatedSeries d = dn_ht_series(n, n + 2);
    pts.push_back({n, d.coeff(n + 2) / d.coeff(n)});
  }
  FitResult fit = fit_with_denominator(pts, Poly{Rational(1), Rational(1)});
  CHECK(poly_equal(fit.numerator, Poly{Rational(0), Rational(5), Rational(3), Rational(2)}));
}

TEST_CASE("sigma construction on the plus branch") {
  for (int n = 1; n <= 4; ++n) {
    SigmaSeries s = build_sigma(n, SigmaBranch::plus, n + 8);
    CHECK(s.series.min_exp() == -2);
    CHECK(s.series.coeff(-2) == Rational(-(2 * n + 1), 64));
  }

  // regression pin for n=1 through x^6
  SigmaSeries s1 = build_sigma(1, SigmaBranch::plus, 10);
  const Rational expect[] = {Rational(-3, 64), Rational(3, 16), Rational(3, 32),
                             Rational(3, 16),  Rational(45, 64), Rational(3),
                             Rational(51, 4),  Rational(57),     Rational(1053, 4)};
  for (int e = -2; e <= 6; ++e) CHECK(s1.series.coeff(e) == expect[e + 2]);

  // sigma sees D_n only through its log-derivative
  TruncatedSeries d2 = dn_ht_series(2, 10);
  SigmaSeries plain = sigma_from_dn(d2, 2, SigmaBranch::plus);
  SigmaSeries scaled = sigma_from_dn(mul_monomial(d2, 0, Rational(3)), 2, SigmaBranch::plus);
  CHECK(plain.series == scaled.series);

  CHECK_THROWS_AS(sigma_from_dn(dn_lt_series(1, 8), 1, SigmaBranch::plus), VariableMismatch);
}

TEST_CASE("sigma-form residual vanishes on both branches") {
  for (int n = 1; n <= 4; ++n) {
    SigmaSeries s = build_sigma(n, SigmaBranch::plus, n + 10);
    TruncatedSeries res = p6_residual(s);
    CHECK(res.is_zero());
    CHECK(res.order() - res.min_exp() >= -1);  // zero series stores min = order+1
    CHECK(res.order() >= 5);                   // the certificate covers real terms
  }
  for (int n = 1; n <= 2; ++n) {
    SigmaSeries s = build_sigma(n, SigmaBranch::minus, 11);
    CHECK(s.series.min_exp() >= 2);
    TruncatedSeries res = p6_residual(s);
    CHECK(res.is_zero());
    CHECK(res.order() >= 5);
  }

  SigmaSeries shallow = build_sigma(1, SigmaBranch::plus, 2);
  CHECK_THROWS_AS(p6_residual(shallow), OrderTooSmall);
}

TEST_CASE("residual detects a corrupted diagonal series") {
  TruncatedSeries d2 = dn_ht_series(2, 10);
  std::vector<Rational> coeffs = d2.coeffs();
  coeffs[3] += 1;  // x^5 term
  TruncatedSeries bad(Var::x, d2.min_exp(), d2.order(), std::move(coeffs));
  TruncatedSeries res = p6_residual(sigma_from_dn(bad, 2, SigmaBranch::plus));
  CHECK(!res.is_zero());

  TruncatedSeries l1 = dn_lt_series(1, 9);
  std::vector<Rational> lc = l1.coeffs();
  lc[4] += 1;  // u^4 term
  TruncatedSeries lbad(Var::u, l1.min_exp(), l1.order(), std::move(lc));
  TruncatedSeries lres = p6_residual(sigma_from_dn(lbad, 1, SigmaBranch::minus));
  CHECK(!lres.is_zero());
}
