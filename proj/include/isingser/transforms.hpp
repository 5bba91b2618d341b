#pragma once

#include "isingser/rational.hpp"
#include "isingser/series.hpp"

namespace isingser {

// Exponent reindexing between a variable and its square. halve requires
// every odd-exponent coefficient to vanish (and an even min_exp).
TruncatedSeries halve_exponents(const TruncatedSeries& a, Var out);
TruncatedSeries double_exponents(const TruncatedSeries& a, Var out);

// Quarter-modulus re-expansions. The high-temperature branch works in
// w = sqrt(k̂_>) since odd separations produce half-integer k̂ powers;
// w(v) = v/(1-v^2). The low-temperature branch substitutes
// k̂_<(u) = u/(1-u)^2 directly. Reversion tables are cached internally.
TruncatedSeries to_khat_gt(const TruncatedSeries& s_in_v);
TruncatedSeries from_khat_gt(const TruncatedSeries& s_in_w);
TruncatedSeries to_khat_lt(const TruncatedSeries& s_in_u);
TruncatedSeries from_khat_lt(const TruncatedSeries& s_in_khat);

// Laurent series of t = (1-x)^4/(16 x^2); exact, min_exp = -2.
TruncatedSeries t_of_x(long order);

// Exact pointwise values of the quarter moduli. Their product across the
// temperature duality v <-> z = (1-v)/(1+v), u = z^2 equals 1/16.
Rational khat_gt_value(const Rational& v);
Rational khat_lt_value(const Rational& u);

// Evaluate a polynomial series at the dual point (1-v0)/(1+v0).
Rational eval_at_dual(const TruncatedSeries& s, const Rational& v0);

}  // namespace isingser
