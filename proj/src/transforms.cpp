#include "isingser/transforms.hpp"

#include <mutex>
#include <vector>

namespace isingser {

namespace {

TruncatedSeries poly(Var var, std::vector<Rational> coeffs, long order) {
  coeffs.resize(static_cast<size_t>(order) + 1);
  return TruncatedSeries(var, 0, order, std::move(coeffs));
}

// w(v) = v/(1-v^2) as a v-series
TruncatedSeries w_of_v(long order) {
  TruncatedSeries den = poly(Var::v, {Rational(1), Rational(0), Rational(-1)}, order);
  return mul(TruncatedSeries::monomial(Var::v, 1, Rational(1), order), reciprocal(den));
}

// k̂_<(u) = u/(1-u)^2 as a u-series
TruncatedSeries khat_of_u(long order) {
  TruncatedSeries den = poly(Var::u, {Rational(1), Rational(-2), Rational(1)}, order);
  return mul(TruncatedSeries::monomial(Var::u, 1, Rational(1), order), reciprocal(den));
}

// write-once growing cache of a reversion table
struct TableCache {
  std::mutex mu;
  TruncatedSeries table = TruncatedSeries::zero(Var::generic, 0);
  bool ready = false;
};

template <typename Build>
TruncatedSeries cached(TableCache& cache, long order, Build&& build) {
  std::lock_guard<std::mutex> lock(cache.mu);
  if (!cache.ready || cache.table.order() < order) {
    cache.table = build(order);
    cache.ready = true;
  }
  return truncate(cache.table, order);
}

TableCache g_v_of_w;   // v as a series in w
TableCache g_u_of_kh;  // u as a series in k̂_<

TruncatedSeries v_of_w_table(long order) {
  return cached(g_v_of_w, order,
                [](long n) { return retag(revert(w_of_v(n)), Var::wgt); });
}

TruncatedSeries u_of_khat_table(long order) {
  return cached(g_u_of_kh, order,
                [](long n) { return retag(revert(khat_of_u(n)), Var::klt_hat); });
}

}  // namespace

TruncatedSeries halve_exponents(const TruncatedSeries& a, Var out) {
  if (a.is_zero()) return TruncatedSeries::zero(out, a.order() / 2);
  if (a.min_exp() % 2 != 0) throw NonIntegerExponent("odd valuation cannot be halved");
  std::vector<Rational> coeffs;
  for (long e = a.min_exp(); e <= a.order(); ++e) {
    Rational c = a.coeff(e);
    if (e % 2 != 0) {
      if (c != 0) throw NonIntegerExponent("odd-exponent coefficient present");
    } else {
      coeffs.push_back(std::move(c));
    }
  }
  return TruncatedSeries(out, a.min_exp() / 2, a.order() / 2, std::move(coeffs));
}

TruncatedSeries double_exponents(const TruncatedSeries& a, Var out) {
  // odd exponents of the image are known absent, hence order 2N+1
  if (a.is_zero()) return TruncatedSeries::zero(out, 2 * a.order() + 1);
  std::vector<Rational> coeffs;
  for (long e = a.min_exp(); e <= a.order(); ++e) {
    if (e > a.min_exp()) coeffs.push_back(Rational(0));
    coeffs.push_back(a.coeff(e));
  }
  coeffs.push_back(Rational(0));
  return TruncatedSeries(out, 2 * a.min_exp(), 2 * a.order() + 1, std::move(coeffs));
}

TruncatedSeries to_khat_gt(const TruncatedSeries& s_in_v) {
  if (s_in_v.is_zero()) return TruncatedSeries::zero(Var::wgt, s_in_v.order());
  return compose(s_in_v, v_of_w_table(s_in_v.order()));
}

TruncatedSeries from_khat_gt(const TruncatedSeries& s_in_w) {
  if (s_in_w.is_zero()) return TruncatedSeries::zero(Var::v, s_in_w.order());
  return compose(s_in_w, w_of_v(s_in_w.order()));
}

TruncatedSeries to_khat_lt(const TruncatedSeries& s_in_u) {
  if (s_in_u.is_zero()) return TruncatedSeries::zero(Var::klt_hat, s_in_u.order());
  return compose(s_in_u, u_of_khat_table(s_in_u.order()));
}

TruncatedSeries from_khat_lt(const TruncatedSeries& s_in_khat) {
  if (s_in_khat.is_zero()) return TruncatedSeries::zero(Var::u, s_in_khat.order());
  return compose(s_in_khat, khat_of_u(s_in_khat.order()));
}

TruncatedSeries t_of_x(long order) {
  if (order < -2) throw OrderTooSmall("t starts at x^{-2}");
  static const Rational kT[5] = {Rational(1, 16), Rational(-1, 4), Rational(3, 8),
                                 Rational(-1, 4), Rational(1, 16)};
  std::vector<Rational> coeffs;
  for (long e = -2; e <= order; ++e) coeffs.push_back(e <= 2 ? kT[e + 2] : Rational(0));
  return TruncatedSeries(Var::x, -2, order, std::move(coeffs));
}

Rational khat_gt_value(const Rational& v) {
  if (v == 1 || v == -1) throw std::domain_error("pole of the quarter modulus");
  Rational w = v / (1 - v * v);
  return w * w;
}

Rational khat_lt_value(const Rational& u) {
  if (u == 1) throw std::domain_error("pole of the quarter modulus");
  Rational d = 1 - u;
  return u / (d * d);
}

Rational eval_at_dual(const TruncatedSeries& s, const Rational& v0) {
  return eval_exact(s, dual_point(v0));
}

}  // namespace isingser
