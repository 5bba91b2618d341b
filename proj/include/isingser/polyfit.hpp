#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <isingser/rational.hpp>

namespace isingser {

// Dense univariate polynomial, coefficients ascending by degree.
// Trailing zeros are tolerated everywhere; poly_trim removes them.
using Poly = std::vector<Rational>;

Rational poly_eval(const Poly& p, const Rational& x);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& p);
// p(n+1) as a polynomial in n.
Poly poly_shift_up(const Poly& p);
Poly poly_trim(Poly p);
bool poly_equal(const Poly& a, const Poly& b);
bool poly_is_zero(const Poly& p);
long poly_degree(const Poly& p);  // -1 for the zero polynomial
std::string poly_to_string(const Poly& p, const std::string& var = "n");

struct FitPoint {
  long n;
  Rational value;
};

// Exact fit of sampled values by a rational expression numerator/denominator.
// denominator is {1} unless one was prescribed.  surplus_residuals holds the
// residual at every sample beyond the minimal interpolation prefix; a fit is
// only ever returned with all of them zero, and at least one present.
struct FitResult {
  Poly numerator;
  Poly denominator;
  long degree = 0;  // degree of numerator
  std::vector<Rational> surplus_residuals;
  long points_used = 0;
  bool low_surplus = false;  // fewer than 2 surplus samples confirmed the fit

  Rational eval(const Rational& n) const;
};

class NoPolynomialFit : public std::runtime_error {
 public:
  NoPolynomialFit(const std::string& what, std::vector<Rational> residuals);
  const std::vector<Rational>& residuals() const { return residuals_; }

 private:
  std::vector<Rational> residuals_;
};

class InsufficientOrder : public std::runtime_error {
 public:
  explicit InsufficientOrder(const std::string& what);
};

// Minimal-degree exact polynomial through the samples.  Sorts by n, so the
// result is independent of input order.  Needs >= 3 samples, distinct n, and
// at least one sample left over beyond the interpolation prefix; throws
// NoPolynomialFit (with the residual table) when no degree <= count-2 fits.
FitResult fit_minimal_polynomial(std::vector<FitPoint> points);

// Fit value*q(n) by a polynomial and report the pair (numerator, q).
// q must be nonzero at every sampled n.
FitResult fit_with_denominator(std::vector<FitPoint> points, Poly denominator);

// Exact check of fit(n+1) - fit(n) == claimed(n).  Works for prescribed
// denominators too (cross-multiplied comparison).
bool verify_difference_identity(const FitResult& fit, const Poly& claimed_difference);

// Evaluates the fit literally at n = 1..n_max and checks every value is an
// integer (and even, when require_even).
bool verify_integrality(const FitResult& fit, long n_max, bool require_even);

struct StationaryPoint {
  double location;
  double value;
  bool is_minimum;
};

// Roots and stationary points of the fitted function on n >= 1, located by
// bisection on exact rational signs to better than 1e-6.  Roots of even
// multiplicity do not produce a sign change and are not reported.
struct StationaryReport {
  std::vector<double> roots;
  std::vector<StationaryPoint> extrema;
};

StationaryReport stationary_analysis(const FitResult& fit);

// Sampled coefficient sequences from the correlation oracles, ready to fit.
//   ht_row       coefficient of v^(n+offset) in the row-n series
//   ht_row_khat  bracket coefficient at index n+2*offset after the modulus
//                substitution (leading bracket term normalized to 1)
//   lt_conn      coefficient of u^(n+2+offset) in connected row-n, divided
//                by the leading 4
//   lt_conn_khat same position after the low-side modulus substitution,
//                divided by the leading 4
enum class CoefficientFamily { ht_row, ht_row_khat, lt_conn, lt_conn_khat };

// max_order < 0 means uncapped; otherwise requesting a series order beyond
// the cap throws InsufficientOrder instead of running the oracle.
std::vector<FitPoint> collect_coefficients(CoefficientFamily family, long offset,
                                           long n_lo, long n_hi, long max_order = -1);

}  // namespace isingser
