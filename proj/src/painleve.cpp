#include <isingser/painleve.hpp>

#include <stdexcept>
#include <string>

#include <isingser/oracle_ht.hpp>
#include <isingser/oracle_lt.hpp>
#include <isingser/polyfit.hpp>
#include <isingser/transforms.hpp>

namespace isingser {

namespace {

TruncatedSeries chart_poly(Var var, std::vector<Rational> coeffs, int order) {
  coeffs.resize(static_cast<size_t>(order) + 1);
  return TruncatedSeries(var, 0, order, std::move(coeffs));
}

// The Painleve time (1-c)^4/(16c^2) reads the same in either chart; both
// branches expand around t = infinity.
TruncatedSeries t_in_chart(Var var, int order) {
  if (var == Var::x) return t_of_x(order);
  return mul_monomial(chart_poly(var,
                                 {Rational(1), Rational(-4), Rational(6), Rational(-4),
                                  Rational(1)},
                                 order + 2),
                      -2, Rational(1, 16));
}

const Poly kRatioNum[5] = {
    {Rational(0), Rational(2)},
    {Rational(0), Rational(5), Rational(3), Rational(2)},
    {Rational(0), Rational(50), Rational(32), Rational(10), Rational(4)},
    {Rational(-48), Rational(726), Rational(943), Rational(372), Rational(103), Rational(24),
     Rational(4)},
    {Rational(-960), Rational(6972), Rational(10228), Rational(4031), Rational(930),
     Rational(183), Rational(32), Rational(4)},
};
const Poly kRatioDen[5] = {
    {Rational(1)},
    {Rational(1), Rational(1)},
    {Rational(3), Rational(3)},
    {Rational(12), Rational(18), Rational(6)},
    {Rational(30), Rational(45), Rational(15)},
};

}  // namespace

TruncatedSeries dn_ht_series_oracle(int n, int order) {
  if (order < n) throw OrderTooSmall("order below the leading exponent");
  TruncatedSeries in_v = ht_series(CorrelationId::diagonal(n), 2 * order);
  return halve_exponents(in_v, Var::x);
}

TruncatedSeries dn_lt_series_oracle(int n, int order) {
  // the window sweep, not lt_series_full: that one answers from the same
  // determinant this oracle exists to check
  return lt_series_full_info(CorrelationId::diagonal(n), order).series;
}

std::vector<RatioCheck> check_ratio_formulas(int n_lo, int n_hi, int ell_max) {
  if (ell_max < 1 || ell_max > 5)
    throw std::invalid_argument("closed ratio forms are known for ell = 1..5");
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("need 1 <= n_lo <= n_hi");
  std::vector<RatioCheck> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    const TruncatedSeries d = dn_ht_series(n, n + ell_max);
    const Rational lead = d.coeff(n);
    for (int ell = 1; ell <= ell_max; ++ell) {
      RatioCheck rc;
      rc.n = n;
      rc.ell = ell;
      rc.measured = d.coeff(n + ell) / lead;
      rc.predicted = poly_eval(kRatioNum[ell - 1], Rational(n)) /
                     poly_eval(kRatioDen[ell - 1], Rational(n));
      rc.match = rc.measured == rc.predicted;
      out.push_back(rc);
    }
  }
  return out;
}

SigmaSeries sigma_from_dn(const TruncatedSeries& dn, int n, SigmaBranch branch) {
  const Var chart = branch == SigmaBranch::plus ? Var::x : Var::u;
  if (dn.var() != chart) throw VariableMismatch("diagonal series is in the wrong chart");
  if (dn.is_zero()) throw ZeroLeadingCoefficient("diagonal series is zero");

  const int t_order = static_cast<int>(dn.order()) + 6;
  const TruncatedSeries t = t_in_chart(chart, t_order);
  const TruncatedSeries dtd = derivative(t);
  const TruncatedSeries dlog_dt = divide(divide(derivative(dn), dn), dtd);
  const TruncatedSeries one = TruncatedSeries::constant(chart, 1, t.order());
  TruncatedSeries sigma = mul(mul(t, sub(t, one)), dlog_dt);
  if (branch == SigmaBranch::plus) {
    sigma = sub(sigma, mul_monomial(t, 0, Rational(1, 4)));
  } else {
    sigma = sub(sigma, TruncatedSeries::constant(chart, Rational(1, 4), sigma.order()));
  }
  return SigmaSeries{n, branch, std::move(sigma)};
}

SigmaSeries build_sigma(int n, SigmaBranch branch, int order) {
  return sigma_from_dn(
      branch == SigmaBranch::plus ? dn_ht_series(n, order) : dn_lt_series(n, order), n, branch);
}

TruncatedSeries p6_residual(const SigmaSeries& sigma) {
  const TruncatedSeries& s = sigma.series;
  if (s.order() - s.min_exp() < 4)
    throw OrderTooSmall("sigma known to fewer than 4 terms past its leading exponent");
  const Var chart = s.var();

  const int t_order = static_cast<int>(s.order()) + 6;
  const TruncatedSeries t = t_in_chart(chart, t_order);
  const TruncatedSeries dtd = derivative(t);
  const TruncatedSeries one = TruncatedSeries::constant(chart, 1, t.order());

  const TruncatedSeries sp = divide(derivative(s), dtd);
  const TruncatedSeries spp = divide(derivative(sp), dtd);

  const TruncatedSeries lhs = mul(mul(t, sub(t, one)), spp);
  const TruncatedSeries bracket = sub(mul(sub(t, one), sp), s);  // (t-1)s' - s
  const Rational nn = Rational(sigma.n) * Rational(sigma.n);

  TruncatedSeries residual = sub(mul(lhs, lhs), mul_monomial(mul(bracket, bracket), 0, nn));
  const TruncatedSeries quarter =
      sub(bracket, TruncatedSeries::constant(chart, Rational(1, 4), bracket.order()));
  const TruncatedSeries tail = mul(mul_monomial(sp, 0, Rational(4)),
                                   mul(quarter, sub(mul(t, sp), s)));
  return add(residual, tail);
}

}  // namespace isingser
