#include "isingser/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace isingser {

namespace {

const Rational kZero = Rational(0);

void require_same_var(const TruncatedSeries& a, const TruncatedSeries& b,
                      const char* op) {
  if (a.var() != b.var() && a.var() != Var::generic && b.var() != Var::generic) {
    throw VariableMismatch(std::string(op) + ": " + var_name(a.var()) + " vs " +
                           var_name(b.var()));
  }
}

Var merge_var(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.var() == Var::generic ? b.var() : a.var();
}

// Internal only: declare coefficients beyond a.order() to be zero.  Sound in
// Newton-style iterations where the next step corrects them.
TruncatedSeries assume_known(const TruncatedSeries& a, long order) {
  if (order <= a.order()) return truncate(a, order);
  if (a.is_zero()) return TruncatedSeries::zero(a.var(), order);
  std::vector<Rational> c = a.coeffs();
  c.resize(static_cast<size_t>(order - a.min_exp() + 1), Rational(0));
  return TruncatedSeries(a.var(), a.min_exp(), order, std::move(c));
}

}  // namespace

const char* var_name(Var var) {
  switch (var) {
    case Var::v: return "v";
    case Var::z: return "z";
    case Var::x: return "x";
    case Var::u: return "u";
    case Var::kgt_hat: return "kgt_hat";
    case Var::klt_hat: return "klt_hat";
    case Var::wgt: return "wgt";
    case Var::wlt: return "wlt";
    case Var::t: return "t";
    case Var::generic: return "generic";
  }
  return "?";
}

std::optional<Var> var_from_name(std::string_view name) {
  for (Var v : {Var::v, Var::z, Var::x, Var::u, Var::kgt_hat, Var::klt_hat,
                Var::wgt, Var::wlt, Var::t, Var::generic}) {
    if (name == var_name(v)) return v;
  }
  return std::nullopt;
}

TruncatedSeries::TruncatedSeries(Var var, long min_exp, long order,
                                 std::vector<Rational> coeffs)
    : var_(var), min_exp_(min_exp), order_(order), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<size_t>(order_ - min_exp_ + 1) &&
      !(coeffs_.empty() && min_exp_ == order_ + 1)) {
    throw SeriesError("coefficient vector does not match exponent range");
  }
  size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    min_exp_ = order_ + 1;
  } else if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    min_exp_ += static_cast<long>(lead);
  }
}

TruncatedSeries TruncatedSeries::zero(Var var, long order) {
  return TruncatedSeries(var, order + 1, order, {});
}

TruncatedSeries TruncatedSeries::constant(Var var, const Rational& c, long order) {
  return monomial(var, 0, c, order);
}

TruncatedSeries TruncatedSeries::monomial(Var var, long exp, const Rational& c,
                                          long order) {
  if (c == 0) return zero(var, order);
  if (exp > order) throw OrderTooSmall("monomial exponent beyond certified order");
  std::vector<Rational> coeffs(static_cast<size_t>(order - exp + 1), Rational(0));
  coeffs[0] = c;
  return TruncatedSeries(var, exp, order, std::move(coeffs));
}

const Rational& TruncatedSeries::leading() const {
  if (is_zero()) throw ZeroLeadingCoefficient("leading() of zero series");
  return coeffs_.front();
}

const Rational& TruncatedSeries::coeff(long exp) const {
  if (exp > order_)
    throw OrderTooSmall("coefficient at exponent " + std::to_string(exp) +
                        " beyond certified order " + std::to_string(order_));
  if (exp < min_exp_) return kZero;
  return coeffs_[static_cast<size_t>(exp - min_exp_)];
}

bool TruncatedSeries::pure_parity(int parity) const {
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    long e = min_exp_ + static_cast<long>(i);
    if (coeffs_[i] != 0 && ((e % 2 + 2) % 2) != parity) return false;
  }
  return true;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_var(a, b, "add");
  long order = std::min(a.order(), b.order());
  long mn = std::min(a.min_exp(), b.min_exp());
  if (mn > order) return TruncatedSeries::zero(merge_var(a, b), order);
  std::vector<Rational> c(static_cast<size_t>(order - mn + 1), Rational(0));
  for (long e = mn; e <= order; ++e) {
    Rational s = 0;
    if (e >= a.min_exp() && e <= a.order()) s += a.coeff(e);
    if (e >= b.min_exp() && e <= b.order()) s += b.coeff(e);
    c[static_cast<size_t>(e - mn)] = s;
  }
  return TruncatedSeries(merge_var(a, b), mn, order, std::move(c));
}

TruncatedSeries negate(const TruncatedSeries& a) { return scale(a, Rational(-1)); }

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  return add(a, negate(b));
}

TruncatedSeries scale(const TruncatedSeries& a, const Rational& c) {
  if (c == 0 || a.is_zero()) return TruncatedSeries::zero(a.var(), a.order());
  std::vector<Rational> out = a.coeffs();
  for (auto& q : out) q *= c;
  return TruncatedSeries(a.var(), a.min_exp(), a.order(), std::move(out));
}

TruncatedSeries mul_monomial(const TruncatedSeries& a, long shift, const Rational& c) {
  if (c == 0) return TruncatedSeries::zero(a.var(), a.order() + shift);
  std::vector<Rational> out = a.coeffs();
  for (auto& q : out) q *= c;
  return TruncatedSeries(a.var(), a.min_exp() + shift, a.order() + shift,
                         std::move(out));
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_var(a, b, "mul");
  long order = std::min(a.order() + b.min_exp(), b.order() + a.min_exp());
  long mn = a.min_exp() + b.min_exp();
  if (a.is_zero() || b.is_zero() || mn > order)
    return TruncatedSeries::zero(merge_var(a, b), order);
  std::vector<Rational> c(static_cast<size_t>(order - mn + 1), Rational(0));
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0) continue;
    long ea = a.min_exp() + static_cast<long>(i);
    if (ea + b.min_exp() > order) break;
    for (size_t j = 0; j < cb.size(); ++j) {
      long e = ea + b.min_exp() + static_cast<long>(j);
      if (e > order) break;
      if (cb[j] == 0) continue;
      c[static_cast<size_t>(e - mn)] += ca[i] * cb[j];
    }
  }
  return TruncatedSeries(merge_var(a, b), mn, order, std::move(c));
}

TruncatedSeries reciprocal(const TruncatedSeries& a) {
  if (a.is_zero()) throw ZeroLeadingCoefficient("reciprocal of zero series");
  long m = a.min_exp();
  long K = a.order() - m;  // relative precision carries over
  const Rational& c0 = a.leading();
  std::vector<Rational> g(static_cast<size_t>(K + 1), Rational(0));
  g[0] = 1;
  for (long k = 1; k <= K; ++k) {
    Rational s = 0;
    for (long j = 1; j <= k; ++j) {
      const Rational& hj = a.coeff(m + j);
      if (hj != 0) s += (hj / c0) * g[static_cast<size_t>(k - j)];
    }
    g[static_cast<size_t>(k)] = -s;
  }
  for (auto& q : g) q /= c0;
  return TruncatedSeries(a.var(), -m, -m + K, std::move(g));
}

TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  return mul(a, reciprocal(b));
}

TruncatedSeries derivative(const TruncatedSeries& a) {
  if (a.is_zero()) return TruncatedSeries::zero(a.var(), a.order() - 1);
  long mn = a.min_exp();
  long order = a.order() - 1;
  long new_mn = mn - 1;
  if (new_mn > order) return TruncatedSeries::zero(a.var(), order);
  std::vector<Rational> c(static_cast<size_t>(order - new_mn + 1), Rational(0));
  for (long e = mn; e <= a.order(); ++e) {
    if (e == 0) continue;
    if (e - 1 > order) break;
    c[static_cast<size_t>(e - 1 - new_mn)] = a.coeff(e) * e;
  }
  return TruncatedSeries(a.var(), new_mn, order, std::move(c));
}

TruncatedSeries pow_rational(const TruncatedSeries& a, const Rational& r) {
  if (a.is_zero())
    throw ZeroLeadingCoefficient("pow of zero series has no leading term");
  long m = a.min_exp();
  const Rational& c0 = a.leading();

  Rational mr = Rational(m) * r;
  if (denominator(mr) != 1)
    throw NonIntegerExponent("valuation " + std::to_string(m) + " times exponent " +
                             to_string(r) + " is not an integer");
  long e_res = static_cast<long>(numerator(mr));

  long p = static_cast<long>(numerator(r));
  unsigned long q = static_cast<unsigned long>(denominator(r));
  auto scale0 = exact_pow(c0, p, q);
  if (!scale0)
    throw IrrationalLeadingScale("leading coefficient " + to_string(c0) +
                                 " has no rational power " + to_string(r));

  long K = a.order() - m;
  // a = c0 x^m (1 + h); (1+h)^r by the standard differential recurrence.
  std::vector<Rational> h(static_cast<size_t>(K + 1), Rational(0));
  for (long j = 1; j <= K; ++j) h[static_cast<size_t>(j)] = a.coeff(m + j) / c0;
  std::vector<Rational> g(static_cast<size_t>(K + 1), Rational(0));
  g[0] = 1;
  for (long k = 1; k <= K; ++k) {
    Rational s = 0;
    for (long j = 1; j <= k; ++j) {
      if (h[static_cast<size_t>(j)] == 0) continue;
      s += (r * j - (k - j)) * h[static_cast<size_t>(j)] * g[static_cast<size_t>(k - j)];
    }
    g[static_cast<size_t>(k)] = s / k;
  }
  for (auto& qq : g) qq *= *scale0;
  return TruncatedSeries(a.var(), e_res, e_res + K, std::move(g));
}

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (g.is_zero() || g.min_exp() < 1)
    throw InvalidValuation("compose: inner series must have valuation >= 1");
  if (!f.is_zero() && f.min_exp() < 0)
    throw InvalidValuation("compose: outer series must have no negative exponents");
  long vg = g.min_exp();
  long order = std::min(g.order(), (f.order() + 1) * vg - 1);
  TruncatedSeries acc = TruncatedSeries::zero(g.var(), order);
  if (f.is_zero()) return acc;
  TruncatedSeries gt = truncate(g, order);
  for (long e = f.order(); e >= 0; --e) {
    // Horner step; gt has valuation >= 1 and acc valuation >= 0, so the
    // product's certified order never drops below `order`.
    if (!acc.is_zero()) acc = truncate(mul(acc, gt), order);
    const Rational& fe = f.coeff(e);
    if (fe != 0) acc = add(acc, TruncatedSeries::constant(g.var(), fe, order));
  }
  return acc;
}

TruncatedSeries revert(const TruncatedSeries& g) {
  if (g.is_zero() || g.min_exp() != 1)
    throw InvalidValuation("revert: series must have valuation exactly 1");
  long N = g.order();
  const Rational& g1 = g.leading();
  TruncatedSeries h = TruncatedSeries::monomial(g.var(), 1, 1 / g1, 1);
  long cur = 1;
  while (cur < N) {
    long next = std::min(2 * cur, N);
    TruncatedSeries hp = assume_known(h, next);
    TruncatedSeries gt = truncate(g, next);
    TruncatedSeries err =
        sub(compose(gt, hp), TruncatedSeries::monomial(g.var(), 1, 1, next));
    TruncatedSeries corr = mul(err, reciprocal(compose(derivative(gt), hp)));
    h = truncate(sub(hp, corr), next);
    cur = next;
  }
  return h;
}

TruncatedSeries truncate(const TruncatedSeries& a, long new_order) {
  if (new_order > a.order())
    throw OrderTooSmall("truncate cannot extend certified order");
  if (new_order == a.order()) return a;
  if (a.is_zero() || new_order < a.min_exp())
    return TruncatedSeries::zero(a.var(), new_order);
  std::vector<Rational> c(a.coeffs().begin(),
                          a.coeffs().begin() + (new_order - a.min_exp() + 1));
  return TruncatedSeries(a.var(), a.min_exp(), new_order, std::move(c));
}

TruncatedSeries retag(const TruncatedSeries& a, Var var) {
  return TruncatedSeries(var, a.min_exp(), a.order(), a.coeffs());
}

Rational eval_exact(const TruncatedSeries& a, const Rational& point) {
  if (a.is_zero()) return Rational(0);
  if (a.min_exp() < 0)
    throw NotAPolynomial("exact evaluation requires nonnegative exponents");
  Rational acc = 0;
  for (long e = a.order(); e >= 0; --e) {
    acc = acc * point;
    if (e >= a.min_exp()) acc += a.coeff(e);
  }
  return acc;
}

bool agree_on_overlap(const TruncatedSeries& a, const TruncatedSeries& b) {
  long lo = std::min(a.min_exp(), b.min_exp());
  long hi = std::min(a.order(), b.order());
  for (long e = lo; e <= hi; ++e) {
    Rational ca = (e >= a.min_exp()) ? a.coeff(e) : Rational(0);
    Rational cb = (e >= b.min_exp()) ? b.coeff(e) : Rational(0);
    if (ca != cb) return false;
  }
  return true;
}

Rational dual_point(const Rational& v) {
  if (v == -1) throw SeriesError("dual point undefined at v = -1");
  return (1 - v) / (1 + v);
}

NumericEval numeric_from_series(const TruncatedSeries& s, double k) {
  double point;
  switch (s.var()) {
    case Var::kgt_hat:
    case Var::klt_hat:
      point = k / 4.0;
      break;
    case Var::wgt:
    case Var::wlt:
      point = std::sqrt(k) / 2.0;
      break;
    default:
      throw VariableMismatch(std::string("numeric evaluation expects a modulus "
                                         "variable, got ") +
                             var_name(s.var()));
  }
  double value = 0.0, last = 0.0;
  for (size_t i = 0; i < s.coeffs().size(); ++i) {
    long e = s.min_exp() + static_cast<long>(i);
    if (s.coeffs()[i] == 0) continue;
    double c = static_cast<double>(s.coeffs()[i]);
    double term = c * std::pow(point, static_cast<double>(e));
    value += term;
    last = term;
  }
  return NumericEval{value, std::fabs(last)};
}

std::string to_pretty_string(const TruncatedSeries& s) {
  std::ostringstream os;
  if (s.is_zero()) {
    os << "0 + O(" << var_name(s.var()) << "^" << (s.order() + 1) << ")";
    return os.str();
  }
  bool first = true;
  for (size_t i = 0; i < s.coeffs().size(); ++i) {
    const Rational& c = s.coeffs()[i];
    if (c == 0) continue;
    long e = s.min_exp() + static_cast<long>(i);
    Rational ab = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = (ab == 1) && e != 0;
    if (!unit) os << to_string(ab);
    if (e != 0) {
      if (!unit) os << "*";
      os << var_name(s.var());
      if (e != 1) os << "^" << e;
    }
  }
  os << " + O(" << var_name(s.var()) << "^" << (s.order() + 1) << ")";
  return os.str();
}

}  // namespace isingser
