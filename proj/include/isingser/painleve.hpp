#pragma once

#include <vector>

#include <isingser/rational.hpp>
#include <isingser/series.hpp>
#include <isingser/toeplitz.hpp>

namespace isingser {

enum class SigmaBranch { plus, minus };

// Log-derivative transform of a diagonal correlation in the Painleve time
// variable t.  The plus branch lives on the high-temperature side and is
// Laurent in x with a double pole at 0; the minus branch is regular in u.
struct SigmaSeries {
  int n = 0;
  SigmaBranch branch = SigmaBranch::plus;
  TruncatedSeries series;
};

// Diagonal correlations from the lattice subgraph oracles, for checking the
// determinant engines in toeplitz.hpp against an independent construction.
// Cost grows steeply with order; these are the cross-check route, not the
// workhorse.
TruncatedSeries dn_ht_series_oracle(int n, int order);
TruncatedSeries dn_lt_series_oracle(int n, int order);

struct RatioCheck {
  int n;
  int ell;
  Rational measured;
  Rational predicted;
  bool match;
};

// Measured coefficient ratios c_{n,n+ell}/c_{n,n} of the diagonal series
// against the closed rational forms, ell = 1..ell_max (ell_max <= 5).
std::vector<RatioCheck> check_ratio_formulas(int n_lo, int n_hi, int ell_max);

// sigma built from an explicitly supplied diagonal series (chart x for the
// plus branch, u for minus).  Exposed so tests can feed rescaled or
// deliberately corrupted inputs.
SigmaSeries sigma_from_dn(const TruncatedSeries& dn, int n, SigmaBranch branch);

SigmaSeries build_sigma(int n, SigmaBranch branch, int order);

// Left side of the sigma-form ODE on the series.  Identically zero when the
// construction is sound; any nonzero coefficient signals a defect upstream.
TruncatedSeries p6_residual(const SigmaSeries& sigma);

}  // namespace isingser
