#include "isingser/oracle_ht.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "isingser/kernel.hpp"

namespace isingser {

namespace {

void require_nonneg(int value, const char* what) {
  if (value < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

// counts[j] = signed subgraph count with j edges; here signs never occur
TruncatedSeries series_from_counts(const std::vector<Int>& counts, int order) {
  std::vector<Rational> coeffs;
  coeffs.reserve(counts.size());
  for (const Int& c : counts) {
    if (c < 0) throw std::logic_error("negative count in unsigned enumeration");
    coeffs.emplace_back(c);
  }
  return TruncatedSeries(Var::v, 0, order, std::move(coeffs));
}

HtRun ratio_on_grid(const CorrelationId& id, int order, const GridSpec& base,
                    int ax, int ay, int bx, int by, int padding) {
  GridSpec num = base;
  num.odd_mask.assign(static_cast<size_t>(num.width), 0);
  num.odd_mask[static_cast<size_t>(ax)] ^= uint64_t(1) << ay;
  num.odd_mask[static_cast<size_t>(bx)] ^= uint64_t(1) << by;

  KernelResult nres = count_subgraphs(num);
  KernelResult dres = count_subgraphs(base);

  TruncatedSeries ns = series_from_counts(nres.counts, order);
  TruncatedSeries ds = series_from_counts(dres.counts, order);
  if (ns.is_zero()) throw std::logic_error("numerator vanished; window cannot be valid");
  TruncatedSeries r = divide(ns, ds);

  int dist = id.distance();
  if (r.min_exp() != dist) throw std::logic_error("correlation series has wrong valuation");
  for (int j = dist; j <= order; ++j) {
    Rational c = r.coeff(j);
    if ((j - dist) % 2 != 0) {
      if (c != 0) throw std::logic_error("parity-violating coefficient");
    } else {
      if (denominator(c) != 1 || c < 0)
        throw std::logic_error("correlation coefficient not a nonnegative integer");
    }
  }
  return HtRun{std::move(r), padding, std::max(nres.peak_states, dres.peak_states)};
}

}  // namespace

CorrelationId CorrelationId::row(int n) {
  require_nonneg(n, "row separation");
  return {CorrelationKind::row, n, 0};
}

CorrelationId CorrelationId::diagonal(int n) {
  require_nonneg(n, "diagonal separation");
  return {CorrelationKind::diagonal, n, n};
}

CorrelationId CorrelationId::general(int m, int n) {
  require_nonneg(m, "x offset");
  require_nonneg(n, "y offset");
  return {CorrelationKind::general, m, n};
}

int CorrelationId::dx() const { return m; }

int CorrelationId::dy() const { return kind == CorrelationKind::row ? 0 : n; }

std::string CorrelationId::label() const {
  switch (kind) {
    case CorrelationKind::row:
      return "row" + std::to_string(m);
    case CorrelationKind::diagonal:
      return "diag" + std::to_string(n);
    case CorrelationKind::general:
      return "pair(" + std::to_string(m) + "," + std::to_string(n) + ")";
  }
  return "?";
}

HtWindow ht_window_with_padding(const CorrelationId& id, int padding) {
  if (padding < 1) throw std::invalid_argument("window padding must be >= 1");
  HtWindow w;
  w.padding = padding;
  w.x_lo = -padding;
  w.x_hi = id.dx() + padding - 1;
  w.y_lo = -padding;
  // rows keep one spare row above; other kinds mirror the x rule
  w.y_hi = id.kind == CorrelationKind::row ? padding : id.dy() + padding - 1;
  return w;
}

HtWindow default_ht_window(const CorrelationId& id, int order) {
  int excess = order - id.distance();
  if (excess < 0) throw OrderTooSmall("order below the leading exponent");
  return ht_window_with_padding(id, (excess + 1) / 2 + 1);
}

HtRun ht_series_on_window(const CorrelationId& id, int order, const HtWindow& window) {
  if (order < id.distance()) throw OrderTooSmall("order below the leading exponent");
  if (id.distance() == 0) return HtRun{TruncatedSeries::constant(Var::v, 1, order), 0, 0};
  if (window.x_lo > 0 || window.x_hi < id.dx() || window.y_lo > 0 || window.y_hi < id.dy())
    throw std::invalid_argument("window does not contain both sites");

  // Sweeps are deterministic and pure in these parameters; memoize per process.
  using MemoKey = std::tuple<int, int, int, int, int, int, int, int, int>;
  static std::mutex memo_mutex;
  static std::map<MemoKey, HtRun> memo;
  const MemoKey key{static_cast<int>(id.kind), id.m,        id.n,        order,      window.x_lo,
                    window.x_hi,               window.y_lo, window.y_hi, window.padding};
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }

  GridSpec g;
  g.width = window.x_hi - window.x_lo + 1;
  g.height = window.y_hi - window.y_lo + 1;
  g.budget = order;
  HtRun run = ratio_on_grid(id, order, g, -window.x_lo, -window.y_lo, id.dx() - window.x_lo,
                            id.dy() - window.y_lo, window.padding);
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(key, run);
  }
  return run;
}

HtRun ht_series_info(const CorrelationId& id, int order) {
  if (order < id.distance()) throw OrderTooSmall("order below the leading exponent");
  if (id.distance() == 0) return HtRun{TruncatedSeries::constant(Var::v, 1, order), 0, 0};
  return ht_series_on_window(id, order, default_ht_window(id, order));
}

TruncatedSeries ht_series(const CorrelationId& id, int order) {
  return ht_series_info(id, order).series;
}

TruncatedSeries ht_series_bruteforce(const CorrelationId& id, int order, const HtWindow& window) {
  if (order < id.distance()) throw OrderTooSmall("order below the leading exponent");
  if (id.distance() == 0) return TruncatedSeries::constant(Var::v, 1, order);
  if (window.x_lo > 0 || window.x_hi < id.dx() || window.y_lo > 0 || window.y_hi < id.dy())
    throw std::invalid_argument("window does not contain both sites");

  GridSpec g;
  g.width = window.x_hi - window.x_lo + 1;
  g.height = window.y_hi - window.y_lo + 1;
  g.budget = order;
  GridSpec num = g;
  num.odd_mask.assign(static_cast<size_t>(g.width), 0);
  num.odd_mask[static_cast<size_t>(-window.x_lo)] ^= uint64_t(1) << (-window.y_lo);
  num.odd_mask[static_cast<size_t>(id.dx() - window.x_lo)] ^= uint64_t(1)
                                                             << (id.dy() - window.y_lo);
  TruncatedSeries ns = series_from_counts(count_subgraphs_brute(num).counts, order);
  TruncatedSeries ds = series_from_counts(count_subgraphs_brute(g).counts, order);
  return divide(ns, ds);
}

}  // namespace isingser
