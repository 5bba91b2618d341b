#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "isingser/oracle_ht.hpp"
#include "isingser/series.hpp"

namespace isingser {

// Dual-lattice edges whose sign is flipped, in window grid coordinates.
// vertical (x,y) spans (x,y)-(x,y+1); horizontal (x,y) spans (x,y)-(x+1,y).
struct CutPath {
  std::vector<std::pair<int, int>> vertical;
  std::vector<std::pair<int, int>> horizontal;
};

struct LtRun {
  TruncatedSeries series;  // var u
  int pad_x = 0;
  int pad_y = 0;
  uint64_t peak_states = 0;
};

// Correlation series below criticality in u through u^order. Rows and
// diagonals (general ids are accepted when they reduce to one of those).
// order >= 2. The _info variant runs the signed closed-subgraph sweep on
// the dual lattice and reports window geometry and cost; the plain variant
// answers from the Toeplitz determinants, which reach far deeper orders.
LtRun lt_series_full_info(const CorrelationId& id, int order);
TruncatedSeries lt_series_full(const CorrelationId& id, int order);

// full series minus the closed-form squared magnetization; valuation n+2,
// leading coefficient 4. order >= n+2.
TruncatedSeries lt_series_connected(const CorrelationId& id, int order);

// (1+u)^{1/2} (1-6u+u^2)^{1/4} / (1-u), exact
TruncatedSeries magnetization_squared(int order);

// full series divided by the squared magnetization. order >= n+2.
TruncatedSeries ratio_series(const CorrelationId& id, int order);

// Test hooks. Margins are overridable, and the cut can be replaced by a
// homologous deformation (pushed one dual row up); both must leave the
// series unchanged.
LtRun lt_series_on_window(const CorrelationId& id, int order, int pad_x, int pad_y,
                          bool deformed_cut);
std::pair<int, int> default_lt_padding(const CorrelationId& id, int order);

}  // namespace isingser
