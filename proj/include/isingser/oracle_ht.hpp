#pragma once

#include <cstdint>
#include <string>

#include "isingser/series.hpp"

namespace isingser {

enum class CorrelationKind { row, diagonal, general };

// Identifies a spin pair: (0,0) and (dx,dy). Rows run along x, diagonals
// along x=y. Use the factories; they reject negative separations.
struct CorrelationId {
  CorrelationKind kind = CorrelationKind::row;
  int m = 0;
  int n = 0;

  static CorrelationId row(int n);
  static CorrelationId diagonal(int n);
  static CorrelationId general(int m, int n);

  int dx() const;
  int dy() const;
  int distance() const { return dx() + dy(); }
  std::string label() const;
};

// Finite lattice window in lattice coordinates, inclusive bounds.
// `padding` records the margin the window was built with.
struct HtWindow {
  int x_lo = 0;
  int x_hi = 0;
  int y_lo = 0;
  int y_hi = 0;
  int padding = 0;
};

struct HtRun {
  TruncatedSeries series;
  int padding = 0;
  uint64_t peak_states = 0;
};

// Window the column sweep uses for (id, order); margin grows with the
// excess order − distance. with_padding exists for invariance tests.
HtWindow default_ht_window(const CorrelationId& id, int order);
HtWindow ht_window_with_padding(const CorrelationId& id, int padding);

// Correlation series in v through v^order, exact rational coefficients.
// Throws OrderTooSmall when order < distance, ResourceBudgetExceeded when
// the sweep state table would exceed its cap.
HtRun ht_series_info(const CorrelationId& id, int order);
TruncatedSeries ht_series(const CorrelationId& id, int order);

// Same ratio on an explicit window (column sweep). The window must contain
// both sites.
HtRun ht_series_on_window(const CorrelationId& id, int order, const HtWindow& window);

// Independent check: exhaustive enumeration of all edge subsets of the
// window. Throws WindowTooLarge beyond ~26 edges.
TruncatedSeries ht_series_bruteforce(const CorrelationId& id, int order, const HtWindow& window);

}  // namespace isingser
