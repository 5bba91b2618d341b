#include <doctest.h>

#include <random>

#include "isingser/series.hpp"
#include "isingser/series_json.hpp"

using namespace isingser;

namespace {

// Deterministic random series generator for property tests.
struct Rng {
  std::mt19937_64 eng{0x5eed5eedULL};
  long pick(long lo, long hi) {
    return lo + static_cast<long>(eng() % static_cast<unsigned long>(hi - lo + 1));
  }
  Rational ratio() {
    long num = pick(-6, 6);
    long den = pick(1, 4);
    return Rational(num, den);
  }
  TruncatedSeries series(Var var, bool laurent) {
    long mn = laurent ? pick(-3, 2) : pick(0, 2);
    long order = mn + pick(0, 7);
    std::vector<Rational> c;
    for (long e = mn; e <= order; ++e) c.push_back(ratio());
    return TruncatedSeries(var, mn, order, std::move(c));
  }
  TruncatedSeries unit_series(Var var) {
    // nonzero constant term, so reciprocal exists
    long order = pick(3, 8);
    std::vector<Rational> c;
    c.push_back(Rational(pick(0, 1) == 0 ? 1 : -2, pick(1, 3)));
    for (long e = 1; e <= order; ++e) c.push_back(ratio());
    return TruncatedSeries(var, 0, order, std::move(c));
  }
};

TruncatedSeries geometric(Var var, long order) {
  std::vector<Rational> c(static_cast<size_t>(order + 1), Rational(1));
  return TruncatedSeries(var, 0, order, std::move(c));
}

// Independent binomial oracle: (1+x)^r = sum_k binom(r,k) x^k.
TruncatedSeries binomial_oracle(Var var, const Rational& r, long order) {
  std::vector<Rational> c;
  Rational b = 1;
  for (long k = 0; k <= order; ++k) {
    c.push_back(b);
    b = b * (r - k) / (k + 1);
  }
  return TruncatedSeries(var, 0, order, std::move(c));
}

}  // namespace

TEST_CASE("normalization strips leading zeros and canonicalizes zero") {
  TruncatedSeries s(Var::v, 0, 5, {Rational(0), Rational(0), Rational(3),
                                   Rational(0), Rational(1), Rational(0)});
  CHECK(s.min_exp() == 2);
  CHECK(s.order() == 5);
  CHECK(s.coeffs().size() == 4);
  CHECK(s.coeff(5) == 0);

  TruncatedSeries z(Var::v, 1, 4, {Rational(0), Rational(0), Rational(0), Rational(0)});
  CHECK(z.is_zero());
  CHECK(z.min_exp() == 5);
  CHECK(z.order() == 4);
  CHECK(z == TruncatedSeries::zero(Var::v, 4));
}

TEST_CASE("coefficient access below and above the certified window") {
  TruncatedSeries s = TruncatedSeries::monomial(Var::u, 2, Rational(7), 6);
  CHECK(s.coeff(0) == 0);
  CHECK(s.coeff(2) == 7);
  CHECK(s.coeff(6) == 0);
  CHECK_THROWS_AS((void)s.coeff(7), OrderTooSmall);
}

TEST_CASE("ring axioms on random series") {
  Rng rng;
  for (int it = 0; it < 200; ++it) {
    TruncatedSeries a = rng.series(Var::x, true);
    TruncatedSeries b = rng.series(Var::x, true);
    TruncatedSeries c = rng.series(Var::x, true);
    CHECK(add(a, b) == add(b, a));
    CHECK(mul(a, b) == mul(b, a));
    CHECK(add(add(a, b), c) == add(c, add(b, a)));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    // Distributivity holds on the common certified range (cancellation in
    // b + c can legitimately raise the certified order on one side).
    CHECK(agree_on_overlap(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
    CHECK(add(a, negate(a)).is_zero());
  }
}

TEST_CASE("reciprocal inverts whenever the leading coefficient is nonzero") {
  Rng rng;
  for (int it = 0; it < 100; ++it) {
    TruncatedSeries a = rng.unit_series(Var::u);
    TruncatedSeries p = mul(a, reciprocal(a));
    CHECK(p.min_exp() == 0);
    CHECK(p.coeff(0) == 1);
    for (long e = 1; e <= p.order(); ++e) CHECK(p.coeff(e) == 0);
  }
  // Laurent case: valuation shifts cancel.
  TruncatedSeries m(Var::x, -2, 3,
                    {Rational(2), Rational(-1), Rational(0), Rational(5),
                     Rational(1), Rational(7)});
  TruncatedSeries p = mul(m, reciprocal(m));
  CHECK(p.min_exp() == 0);
  CHECK(p.coeff(0) == 1);
  for (long e = 1; e <= p.order(); ++e) CHECK(p.coeff(e) == 0);
}

TEST_CASE("geometric reciprocal") {
  // 1/(1-u) = 1 + u + u^2 + ...
  TruncatedSeries one_minus(Var::u, 0, 10, [] {
    std::vector<Rational> c(11, Rational(0));
    c[0] = 1;
    c[1] = -1;
    return c;
  }());
  CHECK(reciprocal(one_minus) == geometric(Var::u, 10));
}

TEST_CASE("derivative of Laurent series, exponent zero drops out") {
  TruncatedSeries s(Var::x, -2, 2,
                    {Rational(1), Rational(4), Rational(9), Rational(0), Rational(3)});
  TruncatedSeries d = derivative(s);
  CHECK(d.min_exp() == -3);
  CHECK(d.order() == 1);
  CHECK(d.coeff(-3) == -2);
  CHECK(d.coeff(-2) == -4);
  CHECK(d.coeff(-1) == 0);   // from exponent 0
  CHECK(d.coeff(0) == 0);
  CHECK(d.coeff(1) == 6);
}

TEST_CASE("pow_rational matches the direct binomial oracle") {
  std::vector<Rational> cs(9, Rational(0));
  cs[0] = 1;
  cs[1] = 1;
  TruncatedSeries one_plus(Var::u, 0, 8, std::move(cs));
  for (Rational r : {Rational(1, 4), Rational(3, 4), Rational(-1, 2), Rational(5, 2),
                     Rational(3), Rational(-2)}) {
    CHECK(pow_rational(one_plus, r) ==
          binomial_oracle(Var::u, r, 8));
  }
}

TEST_CASE("pow additivity and fractional-power inverse pairs") {
  Rng rng;
  std::vector<Rational> cs(8, Rational(0));
  cs[0] = 1; cs[1] = -6; cs[2] = 1;
  TruncatedSeries base(Var::u, 0, 7, std::move(cs));
  TruncatedSeries q = pow_rational(base, Rational(1, 4));
  TruncatedSeries q3 = pow_rational(base, Rational(3, 4));
  CHECK(mul(q, q3) == truncate(base, mul(q, q3).order()));
  TruncatedSeries h = pow_rational(base, Rational(1, 2));
  CHECK(mul(h, h) == truncate(base, mul(h, h).order()));
  // (1+u)^{1/4} * (1+u)^{3/4} == 1+u
  std::vector<Rational> lin(9, Rational(0));
  lin[0] = 1; lin[1] = 1;
  TruncatedSeries one_plus(Var::u, 0, 8, std::move(lin));
  TruncatedSeries prod = mul(pow_rational(one_plus, Rational(1, 4)),
                             pow_rational(one_plus, Rational(3, 4)));
  CHECK(prod == truncate(one_plus, prod.order()));
}

TEST_CASE("pow_rational on shifted leading scale and valuation") {
  // (9 x^2 (1 + x))^(1/2) = 3 x (1+x)^(1/2)
  std::vector<Rational> cs = {Rational(9), Rational(9)};
  TruncatedSeries s(Var::x, 2, 3, std::move(cs));
  TruncatedSeries r = pow_rational(s, Rational(1, 2));
  CHECK(r.min_exp() == 1);
  CHECK(r.leading() == 3);
  CHECK(r.coeff(2) == Rational(3, 2));

  // odd valuation, half power -> exponent error
  TruncatedSeries odd = TruncatedSeries::monomial(Var::x, 1, Rational(1), 4);
  CHECK_THROWS_AS(pow_rational(odd, Rational(1, 2)), NonIntegerExponent);
  // non-square leading coefficient -> scale error
  TruncatedSeries ns = TruncatedSeries::monomial(Var::x, 2, Rational(2), 4);
  CHECK_THROWS_AS(pow_rational(ns, Rational(1, 2)), IrrationalLeadingScale);
}

TEST_CASE("compose substitutes and tags by the inner variable") {
  // f = 1/(1-s) in generic, g = x + x^2: f(g) = 1 + (x+x^2) + (x+x^2)^2 + ...
  TruncatedSeries f = geometric(Var::generic, 6);
  std::vector<Rational> gc = {Rational(1), Rational(1)};
  TruncatedSeries g(Var::x, 1, 6, [&] {
    std::vector<Rational> c(6, Rational(0));
    c[0] = 1; c[1] = 1;
    return c;
  }());
  TruncatedSeries fg = compose(f, g);
  CHECK(fg.var() == Var::x);
  CHECK(fg.coeff(0) == 1);
  CHECK(fg.coeff(1) == 1);
  CHECK(fg.coeff(2) == 2);
  CHECK(fg.coeff(3) == 3);
  CHECK(fg.coeff(4) == 5);
  CHECK(fg.coeff(5) == 8);   // Fibonacci
  CHECK(fg.coeff(6) == 13);
  CHECK_THROWS_AS(compose(f, TruncatedSeries::constant(Var::x, Rational(1), 4)),
                  InvalidValuation);
}

TEST_CASE("compose order rule when the inner valuation exceeds one") {
  TruncatedSeries f = geometric(Var::generic, 3);  // known to s^3
  TruncatedSeries g = TruncatedSeries::monomial(Var::x, 2, Rational(1), 11);
  TruncatedSeries fg = compose(f, g);
  // sound through x^min(11, 4*2-1) = x^7
  CHECK(fg.order() == 7);
  CHECK(fg.coeff(0) == 1);
  CHECK(fg.coeff(2) == 1);
  CHECK(fg.coeff(4) == 1);
  CHECK(fg.coeff(6) == 1);
  CHECK(fg.coeff(7) == 0);
}

TEST_CASE("revert inverts composition in both directions") {
  Rng rng;
  for (int it = 0; it < 25; ++it) {
    long order = rng.pick(4, 12);
    std::vector<Rational> c;
    Rational lead = 0;
    while (lead == 0) lead = rng.ratio();
    c.push_back(lead);
    for (long e = 2; e <= order; ++e) c.push_back(rng.ratio());
    TruncatedSeries g(Var::x, 1, order, std::move(c));
    TruncatedSeries h = revert(g);
    CHECK(h.order() == order);
    TruncatedSeries id1 = compose(h, g);
    TruncatedSeries id2 = compose(g, h);
    CHECK(agree_on_overlap(id1, TruncatedSeries::monomial(Var::x, 1, Rational(1), id1.order())));
    CHECK(agree_on_overlap(id2, TruncatedSeries::monomial(Var::x, 1, Rational(1), id2.order())));
  }
}

TEST_CASE("revert worked example") {
  // g = s + s^2  ->  g^{-1} = s - s^2 + 2s^3 - 5s^4 + 14s^5 (Catalan signs)
  TruncatedSeries g(Var::x, 1, 5, {Rational(1), Rational(1), Rational(0),
                                   Rational(0), Rational(0)});
  TruncatedSeries h = revert(g);
  CHECK(h.coeff(1) == 1);
  CHECK(h.coeff(2) == -1);
  CHECK(h.coeff(3) == 2);
  CHECK(h.coeff(4) == -5);
  CHECK(h.coeff(5) == 14);
}

TEST_CASE("variable mismatch is rejected") {
  TruncatedSeries a = TruncatedSeries::monomial(Var::v, 1, Rational(1), 3);
  TruncatedSeries b = TruncatedSeries::monomial(Var::z, 1, Rational(1), 3);
  CHECK_THROWS_AS(add(a, b), VariableMismatch);
  CHECK_THROWS_AS(mul(a, b), VariableMismatch);
}

TEST_CASE("exact evaluation of polynomial part and the duality point map") {
  TruncatedSeries p(Var::v, 1, 3, {Rational(1), Rational(0), Rational(2)});
  CHECK(eval_exact(p, Rational(1, 2)) == Rational(1, 2) + 2 * Rational(1, 8));
  TruncatedSeries laurent(Var::x, -1, 1, {Rational(1), Rational(0), Rational(1)});
  CHECK_THROWS_AS(eval_exact(laurent, Rational(1, 2)), NotAPolynomial);

  // involution: dual(dual(v)) == v; endpoints v=0 <-> z=1
  for (Rational v : {Rational(0), Rational(1, 3), Rational(2, 7), Rational(1)}) {
    CHECK(dual_point(dual_point(v)) == v);
  }
  CHECK(dual_point(Rational(0)) == 1);
  CHECK(dual_point(Rational(1)) == 0);
}

TEST_CASE("parity detection") {
  TruncatedSeries s(Var::u, 2, 6, {Rational(1), Rational(0), Rational(5),
                                   Rational(0), Rational(-1)});
  CHECK(s.pure_parity(0));
  CHECK_FALSE(s.pure_parity(1));
}

TEST_CASE("monomial multiply shifts certified order exactly") {
  TruncatedSeries s(Var::u, 0, 4, {Rational(1), Rational(2), Rational(3),
                                   Rational(4), Rational(5)});
  TruncatedSeries t = mul_monomial(s, 3, Rational(2));
  CHECK(t.min_exp() == 3);
  CHECK(t.order() == 7);
  CHECK(t.coeff(3) == 2);
  CHECK(t.coeff(7) == 10);
  TruncatedSeries back = mul_monomial(t, -3, Rational(1, 2));
  CHECK(back == s);
}

TEST_CASE("numeric partial sum with last-term error proxy") {
  // 1 + khat + khat^2 at k = 0.4 -> khat = 0.1
  TruncatedSeries s(Var::kgt_hat, 0, 2, {Rational(1), Rational(1), Rational(1)});
  NumericEval e = numeric_from_series(s, 0.4);
  CHECK(e.value == doctest::Approx(1.11).epsilon(1e-12));
  CHECK(e.error_proxy == doctest::Approx(0.01).epsilon(1e-12));
  TruncatedSeries w = TruncatedSeries::monomial(Var::wgt, 2, Rational(4), 4);
  NumericEval ew = numeric_from_series(w, 1.0);  // w = 1/2
  CHECK(ew.value == doctest::Approx(1.0).epsilon(1e-12));
  TruncatedSeries bad = TruncatedSeries::monomial(Var::v, 1, Rational(1), 2);
  CHECK_THROWS_AS(numeric_from_series(bad, 0.5), VariableMismatch);
}

TEST_CASE("json round trip preserves every field") {
  Rng rng;
  for (int it = 0; it < 40; ++it) {
    TruncatedSeries s = rng.series(Var::u, true);
    TruncatedSeries back = series_from_json(series_to_json(s));
    CHECK(s == back);
  }
  TruncatedSeries z = TruncatedSeries::zero(Var::klt_hat, 9);
  CHECK(series_from_json(series_to_json(z)) == z);
  nlohmann::json bad = series_to_json(z);
  bad["schema"] = "other/1";
  CHECK_THROWS_AS(series_from_json(bad), SeriesError);
}

TEST_CASE("pretty printer emits leading sign and truncation marker") {
  TruncatedSeries s(Var::v, 1, 3, {Rational(1), Rational(0), Rational(-2)});
  CHECK(to_pretty_string(s) == "v - 2*v^3 + O(v^4)");
}
