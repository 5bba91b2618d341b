#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isingser/rational.hpp"

namespace isingser {

// Expansion variables.  wgt / wlt stand for the square root of the
// corresponding modulus variable kgt_hat / klt_hat, so that half-integer
// powers of the modulus stay representable with integer exponents.
enum class Var {
  v,        // high-temperature tanh variable
  z,        // low-temperature Boltzmann variable
  x,        // v^2
  u,        // z^2
  kgt_hat,  // quarter modulus, high-temperature branch
  klt_hat,  // quarter modulus, low-temperature branch
  wgt,      // sqrt(kgt_hat)
  wlt,      // sqrt(klt_hat)
  t,        // Painleve time variable
  generic,
};

const char* var_name(Var var);
std::optional<Var> var_from_name(std::string_view name);

struct SeriesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VariableMismatch : SeriesError { using SeriesError::SeriesError; };
struct ZeroLeadingCoefficient : SeriesError { using SeriesError::SeriesError; };
struct NonIntegerExponent : SeriesError { using SeriesError::SeriesError; };
struct IrrationalLeadingScale : SeriesError { using SeriesError::SeriesError; };
struct InvalidValuation : SeriesError { using SeriesError::SeriesError; };
struct OrderTooSmall : SeriesError { using SeriesError::SeriesError; };
struct NotAPolynomial : SeriesError { using SeriesError::SeriesError; };

// Truncated Laurent series with exact rational coefficients.
//
// Invariants:
//   - coefficients cover exponents [min_exp, order], densely;
//   - the coefficient at min_exp is nonzero (leading zeros are stripped on
//     construction, which raises min_exp);
//   - the identically-zero series is stored as min_exp == order + 1 with an
//     empty coefficient vector.
//
// `order` is the largest exponent whose coefficient is certified correct.
// Every operation computes the largest sound order for its result; asking for
// a coefficient beyond it throws OrderTooSmall instead of returning garbage.
class TruncatedSeries {
 public:
  TruncatedSeries() : var_(Var::generic), min_exp_(1), order_(0) {}
  TruncatedSeries(Var var, long min_exp, long order, std::vector<Rational> coeffs);

  static TruncatedSeries zero(Var var, long order);
  static TruncatedSeries constant(Var var, const Rational& c, long order);
  static TruncatedSeries monomial(Var var, long exp, const Rational& c, long order);

  Var var() const { return var_; }
  long min_exp() const { return min_exp_; }
  long order() const { return order_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Dense coefficients for [min_exp, order]; empty for the zero series.
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  const Rational& leading() const;  // throws ZeroLeadingCoefficient if zero
  // 0 below min_exp, throws OrderTooSmall above order.
  const Rational& coeff(long exp) const;

  // True when every known nonzero coefficient sits at exponent == parity mod 2.
  bool pure_parity(int parity) const;

  bool operator==(const TruncatedSeries& o) const = default;

 private:
  Var var_;
  long min_exp_;
  long order_;
  std::vector<Rational> coeffs_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries negate(const TruncatedSeries& a);
TruncatedSeries scale(const TruncatedSeries& a, const Rational& c);
// Multiply by c * var^shift (exact: shifts both min_exp and order).
TruncatedSeries mul_monomial(const TruncatedSeries& a, long shift, const Rational& c);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries reciprocal(const TruncatedSeries& a);
TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries derivative(const TruncatedSeries& a);

// a^r for rational r.  Requires min_exp * r integral (NonIntegerExponent) and
// leading^r rational (IrrationalLeadingScale).
TruncatedSeries pow_rational(const TruncatedSeries& a, const Rational& r);

// f(g).  Requires f.min_exp >= 0 and g.min_exp >= 1.  Result is tagged g.var.
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g);

// Compositional inverse of g (g.min_exp == 1).  Newton iteration, doubling
// the certified order each step.  compose(revert(g), g) == identity.
TruncatedSeries revert(const TruncatedSeries& g);

// Restrict certified order (new_order <= order required).
TruncatedSeries truncate(const TruncatedSeries& a, long new_order);
TruncatedSeries retag(const TruncatedSeries& a, Var var);

// Exact value of the stored polynomial part at a rational point.
// Throws NotAPolynomial when negative exponents are present.
Rational eval_exact(const TruncatedSeries& a, const Rational& point);

// Coefficient-wise agreement on the overlap of certified ranges.
bool agree_on_overlap(const TruncatedSeries& a, const TruncatedSeries& b);

// v <-> z duality involution on evaluation points: z = (1-v)/(1+v).
Rational dual_point(const Rational& v);

struct NumericEval {
  double value;
  double error_proxy;  // magnitude of the last included term
};

// Partial sum of a modulus-family series at elliptic modulus k (khat = k/4).
// Accepts Var::kgt_hat / klt_hat (evaluated at k/4) and Var::wgt / wlt
// (evaluated at sqrt(k)/2).  Throws VariableMismatch for other tags.
NumericEval numeric_from_series(const TruncatedSeries& s, double k);

std::string to_pretty_string(const TruncatedSeries& s);

}  // namespace isingser
