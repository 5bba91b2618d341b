#pragma once

#include <isingser/rational.hpp>
#include <isingser/series.hpp>

namespace isingser {

// Exact Toeplitz-determinant engines for the correlations that admit one.
// Everything here depends only on the series ring, so these results can be
// cross-checked against the lattice oracles without circularity.

// Diagonal correlation along the lattice diagonal, as a series in x = v^2.
// Symbol sqrt((1-k s)/(1-k/s)) with k = 4x/(1-x)^2, entries shifted by one
// and negated. Leading term is binom(2n,n) x^n. Cheap at any order the
// coefficient ring can hold.
TruncatedSeries dn_ht_series(int n, int order);

// Same diagonal below criticality, in u = z^2: k = 4u/(1-u)^2, no index
// shift. Starts at 1.
TruncatedSeries dn_lt_series(int n, int order);

// Row correlation at horizontal separation n above criticality, in v. The
// symbol splits into four half-integer powers built from the pair
// a = v(1-v)/(1+v), b = v(1+v)/(1-v); entries are shifted by one and
// negated as in the diagonal case. Leading term is v^n.
TruncatedSeries rn_ht_series(int n, int order);

// Row correlation below criticality, in u. Same four-factor structure with
// the dual pair z(1-z)/(1+z), z(1+z)/(1-z), no shift; the determinant is
// even in z and is returned with exponents halved. Starts at 1.
TruncatedSeries rn_lt_series(int n, int order);

// binom(2n, n)
Int central_binomial(int n);

}  // namespace isingser
