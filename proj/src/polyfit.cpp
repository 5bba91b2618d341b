#include <isingser/polyfit.hpp>

#include <algorithm>
#include <sstream>
#include <utility>

#include <isingser/oracle_ht.hpp>
#include <isingser/oracle_lt.hpp>
#include <isingser/series.hpp>
#include <isingser/transforms.hpp>

namespace isingser {

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {Rational(0)};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {Rational(0)};
  Poly out(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * Rational(static_cast<long>(i));
  return out;
}

Poly poly_shift_up(const Poly& p) {
  Poly out{Rational(0)};
  Poly basis{Rational(1)};  // (n+1)^k
  const Poly n_plus_1{Rational(1), Rational(1)};
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] != 0) out = poly_add(out, poly_mul({p[k]}, basis));
    basis = poly_mul(basis, n_plus_1);
  }
  out.resize(std::max(p.size(), size_t{1}), Rational(0));
  return out;
}

Poly poly_trim(Poly p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  if (p.empty()) p.push_back(Rational(0));
  return p;
}

bool poly_equal(const Poly& a, const Poly& b) { return poly_trim(a) == poly_trim(b); }

bool poly_is_zero(const Poly& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

long poly_degree(const Poly& p) {
  for (size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<long>(i);
  return -1;
}

std::string poly_to_string(const Poly& p, const std::string& var) {
  const long deg = poly_degree(p);
  if (deg < 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = deg; k >= 0; --k) {
    const Rational& c = p[static_cast<size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    const bool frac = denominator(mag) != 1;
    const bool unit = (mag == 1);
    if (k == 0) {
      if (frac) os << "(" << to_string(mag) << ")";
      else os << to_string(mag);
      continue;
    }
    if (!unit) {
      if (frac) os << "(" << to_string(mag) << ")*";
      else os << to_string(mag) << "*";
    }
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

Rational FitResult::eval(const Rational& n) const {
  const Rational den = poly_eval(denominator, n);
  if (den == 0) throw std::domain_error("evaluation at a pole of the fitted expression");
  return poly_eval(numerator, n) / den;
}

NoPolynomialFit::NoPolynomialFit(const std::string& what, std::vector<Rational> residuals)
    : std::runtime_error(what), residuals_(std::move(residuals)) {}

InsufficientOrder::InsufficientOrder(const std::string& what) : std::runtime_error(what) {}

namespace {

// Newton interpolation through the first `count` samples.
Poly interpolate_prefix(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                        size_t count) {
  std::vector<Rational> dd(ys.begin(), ys.begin() + count);
  std::vector<Rational> coeffs;
  coeffs.reserve(count);
  coeffs.push_back(dd[0]);
  for (size_t k = 1; k < count; ++k) {
    for (size_t i = 0; i + k < count; ++i) dd[i] = (dd[i + 1] - dd[i]) / (xs[i + k] - xs[i]);
    coeffs.push_back(dd[0]);
  }
  Poly out{Rational(0)};
  Poly basis{Rational(1)};
  for (size_t k = 0; k < count; ++k) {
    if (coeffs[k] != 0) out = poly_add(out, poly_mul({coeffs[k]}, basis));
    basis = poly_mul(basis, Poly{-xs[k], Rational(1)});
  }
  return out;
}

}  // namespace

FitResult fit_minimal_polynomial(std::vector<FitPoint> points) {
  if (points.size() < 3) throw std::invalid_argument("polynomial fit needs at least 3 samples");
  std::sort(points.begin(), points.end(),
            [](const FitPoint& a, const FitPoint& b) { return a.n < b.n; });
  for (size_t i = 1; i < points.size(); ++i) {
    if (points[i].n == points[i - 1].n)
      throw std::invalid_argument("duplicate sample at n=" + std::to_string(points[i].n));
  }
  const size_t m = points.size();
  std::vector<Rational> xs(m), ys(m);
  for (size_t i = 0; i < m; ++i) {
    xs[i] = Rational(points[i].n);
    ys[i] = points[i].value;
  }

  // First failing residual at each attempted degree, kept for the error path.
  std::vector<Rational> attempt_residuals;
  for (size_t used = 1; used + 1 <= m; ++used) {
    const Poly cand = interpolate_prefix(xs, ys, used);
    std::vector<Rational> residuals;
    residuals.reserve(m - used);
    bool exact = true;
    for (size_t i = used; i < m; ++i) {
      residuals.push_back(ys[i] - poly_eval(cand, xs[i]));
      if (residuals.back() != 0) exact = false;
    }
    if (exact) {
      FitResult r;
      r.numerator = poly_trim(cand);
      r.denominator = {Rational(1)};
      r.degree = std::max(poly_degree(r.numerator), 0L);
      r.surplus_residuals = std::move(residuals);
      r.points_used = static_cast<long>(used);
      r.low_surplus = (m - used) < 2;
      return r;
    }
    for (const auto& res : residuals) {
      if (res != 0) {
        attempt_residuals.push_back(res);
        break;
      }
    }
  }

  std::ostringstream os;
  os << "no exact polynomial through the samples; first failing residual by degree:";
  for (size_t d = 0; d < attempt_residuals.size(); ++d)
    os << " d=" << d << ": " << to_string(attempt_residuals[d]) << ";";
  throw NoPolynomialFit(os.str(), std::move(attempt_residuals));
}

FitResult fit_with_denominator(std::vector<FitPoint> points, Poly denominator) {
  denominator = poly_trim(std::move(denominator));
  if (poly_is_zero(denominator)) throw std::invalid_argument("prescribed denominator is zero");
  for (auto& pt : points) {
    const Rational q = poly_eval(denominator, Rational(pt.n));
    if (q == 0)
      throw std::invalid_argument("prescribed denominator vanishes at n=" + std::to_string(pt.n));
    pt.value *= q;
  }
  FitResult r = fit_minimal_polynomial(std::move(points));
  r.denominator = std::move(denominator);
  return r;
}

bool verify_difference_identity(const FitResult& fit, const Poly& claimed_difference) {
  const Poly num_up = poly_shift_up(fit.numerator);
  const Poly den_up = poly_shift_up(fit.denominator);
  const Poly lhs =
      poly_sub(poly_mul(num_up, fit.denominator), poly_mul(fit.numerator, den_up));
  const Poly rhs = poly_mul(claimed_difference, poly_mul(fit.denominator, den_up));
  return poly_equal(lhs, rhs);
}

bool verify_integrality(const FitResult& fit, long n_max, bool require_even) {
  for (long i = 1; i <= n_max; ++i) {
    const Rational v = fit.eval(Rational(i));
    if (denominator(v) != 1) return false;
    if (require_even && numerator(v) % 2 != 0) return false;
  }
  return true;
}

namespace {

int sign_of(const Rational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

// 1 + max |a_i / a_d| bounds every real root in absolute value.
Rational cauchy_bound(const Poly& p) {
  const long d = poly_degree(p);
  Rational bound(2);
  if (d <= 0) return bound;
  const Rational lead = p[static_cast<size_t>(d)];
  for (long i = 0; i < d; ++i) {
    Rational q = p[static_cast<size_t>(i)] / lead;
    if (q < 0) q = -q;
    if (q + 1 > bound) bound = q + 1;
  }
  return bound;
}

// Sign-change roots of p on [lo, hi], refined below 1e-8.
std::vector<Rational> roots_on(const Poly& p, const Rational& lo, const Rational& hi) {
  std::vector<Rational> found;
  if (poly_degree(p) <= 0 || hi <= lo) return found;
  const Rational step(1, 8);
  const Rational eps(1, 100000000);
  Rational a = lo;
  Rational fa = poly_eval(p, a);
  if (fa == 0) found.push_back(a);
  while (a < hi) {
    Rational b = a + step;
    if (b > hi) b = hi;
    Rational fb = poly_eval(p, b);
    if (fb == 0) {
      found.push_back(b);
    } else if (sign_of(fa) * sign_of(fb) < 0) {
      Rational x = a, y = b, fx = fa;
      while (y - x > eps) {
        const Rational mid = (x + y) / 2;
        const Rational fm = poly_eval(p, mid);
        if (fm == 0) {
          x = mid;
          y = mid;
          break;
        }
        if (sign_of(fx) * sign_of(fm) < 0) {
          y = mid;
        } else {
          x = mid;
          fx = fm;
        }
      }
      found.push_back((x + y) / 2);
    }
    a = b;
    fa = fb;
  }
  return found;
}

}  // namespace

StationaryReport stationary_analysis(const FitResult& fit) {
  StationaryReport report;
  const Poly& num = fit.numerator;
  const Poly& den = fit.denominator;
  if (poly_degree(num) <= 0 && poly_degree(den) <= 0) return report;

  // f' = g / den^2 with g = num' den - num den', so f and f' change sign
  // exactly where num and g do (away from poles).
  const Poly g = poly_sub(poly_mul(poly_derivative(num), den), poly_mul(num, poly_derivative(den)));

  const Rational one(1);
  Rational hi = cauchy_bound(num);
  const Rational gb = cauchy_bound(g);
  if (gb > hi) hi = gb;

  for (const auto& r : roots_on(num, one, hi)) {
    if (poly_eval(den, r) == 0) continue;
    report.roots.push_back(r.convert_to<double>());
  }

  const Rational probe(1, 16);
  for (const auto& r : roots_on(g, one, hi)) {
    if (poly_eval(den, r) == 0) continue;
    const int left = sign_of(poly_eval(g, r - probe));
    const int right = sign_of(poly_eval(g, r + probe));
    if (left == 0 || right == 0 || left == right) continue;  // not a simple extremum
    StationaryPoint sp;
    sp.location = r.convert_to<double>();
    sp.value = fit.eval(r).convert_to<double>();
    sp.is_minimum = (left < 0 && right > 0);
    report.extrema.push_back(sp);
  }
  return report;
}

std::vector<FitPoint> collect_coefficients(CoefficientFamily family, long offset, long n_lo,
                                           long n_hi, long max_order) {
  if (offset < 0) throw std::invalid_argument("coefficient offset must be >= 0");
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("need 1 <= n_lo <= n_hi");
  std::vector<FitPoint> out;
  out.reserve(static_cast<size_t>(n_hi - n_lo + 1));
  for (long n = n_lo; n <= n_hi; ++n) {
    long order = 0;
    switch (family) {
      case CoefficientFamily::ht_row:
        order = n + offset;
        break;
      case CoefficientFamily::ht_row_khat:
        order = n + 2 * offset;
        break;
      case CoefficientFamily::lt_conn:
      case CoefficientFamily::lt_conn_khat:
        order = n + 2 + offset;
        break;
    }
    if (max_order >= 0 && order > max_order) {
      throw InsufficientOrder("series order " + std::to_string(order) + " needed at n=" +
                              std::to_string(n) + " exceeds cap " + std::to_string(max_order));
    }
    Rational value;
    const CorrelationId id = CorrelationId::row(static_cast<int>(n));
    const int ord = static_cast<int>(order);
    switch (family) {
      case CoefficientFamily::ht_row:
        value = ht_series(id, ord).coeff(order);
        break;
      case CoefficientFamily::ht_row_khat:
        value = to_khat_gt(ht_series(id, ord)).coeff(order);
        break;
      case CoefficientFamily::lt_conn:
        value = lt_series_connected(id, ord).coeff(order) / 4;
        break;
      case CoefficientFamily::lt_conn_khat:
        value = to_khat_lt(lt_series_connected(id, ord)).coeff(order) / 4;
        break;
    }
    out.push_back({n, value});
  }
  return out;
}

}  // namespace isingser
