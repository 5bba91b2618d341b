#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "kernel_common.hpp"

namespace isingser {

namespace detail {

void validate_grid(const GridSpec& g) {
  if (g.width < 1 || g.height < 1)
    throw SeriesError("grid must have positive dimensions");
  if (g.height > 62) throw WindowTooLarge("frontier height beyond 62 bits");
  if (g.budget < 0) throw SeriesError("negative edge budget");
  auto check = [&](const std::vector<uint64_t>& v, size_t want, const char* name) {
    if (!v.empty() && v.size() != want)
      throw SeriesError(std::string("grid mask vector ") + name + " has wrong size");
  };
  check(g.odd_mask, static_cast<size_t>(g.width), "odd_mask");
  check(g.neg_vertical, static_cast<size_t>(g.width), "neg_vertical");
  if (g.width > 1)
    check(g.neg_horizontal, static_cast<size_t>(g.width - 1), "neg_horizontal");
  uint64_t row_limit = (uint64_t(1) << g.height) - 1;
  for (uint64_t m : g.odd_mask)
    if (m & ~row_limit) throw SeriesError("odd_mask bit outside grid height");
  for (uint64_t m : g.neg_vertical)
    if (m & ~(row_limit >> 1)) throw SeriesError("neg_vertical bit outside grid");
  for (uint64_t m : g.neg_horizontal)
    if (m & ~row_limit) throw SeriesError("neg_horizontal bit outside grid");
}

PruneContext PruneContext::build(const GridSpec& g) {
  PruneContext p;
  p.enabled = g.enable_prune;
  p.height = g.height;
  size_t w = static_cast<size_t>(g.width);
  p.fold.assign(w, 0);
  for (size_t x = 0; x < g.odd_mask.size(); ++x) p.fold[x] = g.odd_mask[x];
  p.fut.assign(w, {});
  p.fut_n.assign(w, 0);
  for (size_t c = 0; c < w; ++c) {
    int n = 0;
    bool over = false;
    for (size_t x = c + 1; x < w; ++x) {
      uint64_t m = p.fold[x];
      while (m) {
        int y = std::countr_zero(m);
        m &= m - 1;
        if (n == 4) { over = true; break; }
        p.fut[c][static_cast<size_t>(n)] = {static_cast<int>(x), y};
        ++n;
      }
      if (over) break;
    }
    p.fut_n[c] = over ? -1 : n;
  }
  return p;
}

int PruneContext::lower_bound(uint64_t mask, int c) const {
  if (!enabled) return 0;
  int nf = fut_n[static_cast<size_t>(c)];
  if (nf < 0) return 0;
  uint64_t dev = mask ^ fold[static_cast<size_t>(c)];
  int nb = std::popcount(dev);
  if ((nb + nf) & 1) return kInfCost;
  if (nb == 0 && nf == 0) return 0;

  int bits[62];
  int m = 0;
  while (dev) {
    bits[m++] = std::countr_zero(dev);
    dev &= dev - 1;
  }
  const auto& F = fut[static_cast<size_t>(c)];
  auto dist_bit_ext = [&](int y, int e) {
    return (F[static_cast<size_t>(e)][0] - c) + std::abs(F[static_cast<size_t>(e)][1] - y);
  };
  auto dist_ext_ext = [&](int a, int b) {
    return std::abs(F[static_cast<size_t>(a)][0] - F[static_cast<size_t>(b)][0]) +
           std::abs(F[static_cast<size_t>(a)][1] - F[static_cast<size_t>(b)][1]);
  };

  int nS = 1 << nf;
  // base[S]: cost of matching the external subset S among themselves
  int base[16];
  for (int S = 0; S < nS; ++S) {
    int pc = std::popcount(static_cast<unsigned>(S));
    if (pc == 0) { base[S] = 0; continue; }
    if (pc & 1) { base[S] = kInfCost; continue; }
    if (pc == 2) {
      int a = std::countr_zero(static_cast<unsigned>(S));
      int b = std::countr_zero(static_cast<unsigned>(S & (S - 1)));
      base[S] = dist_ext_ext(a, b);
      continue;
    }
    // pc == 4: best of the three pairings
    int e[4], k = 0;
    for (int i = 0; i < nf; ++i)
      if (S >> i & 1) e[k++] = i;
    int p1 = dist_ext_ext(e[0], e[1]) + dist_ext_ext(e[2], e[3]);
    int p2 = dist_ext_ext(e[0], e[2]) + dist_ext_ext(e[1], e[3]);
    int p3 = dist_ext_ext(e[0], e[3]) + dist_ext_ext(e[1], e[2]);
    base[S] = std::min({p1, p2, p3});
  }

  // f[i][S]: min cost for bits[i..) with external subset S still unmatched
  std::array<std::array<int, 16>, 63> f{};
  for (int S = 0; S < nS; ++S) f[static_cast<size_t>(m)][static_cast<size_t>(S)] = base[S];
  for (int i = m - 1; i >= 0; --i) {
    for (int S = 0; S < nS; ++S) {
      int best = kInfCost;
      if (i + 1 < m) {
        int v = f[static_cast<size_t>(i + 2)][static_cast<size_t>(S)];
        if (v < kInfCost) best = std::min(best, (bits[i + 1] - bits[i]) + v);
      }
      for (int e = 0; e < nf; ++e) {
        if (!(S >> e & 1)) continue;
        int v = f[static_cast<size_t>(i + 1)][static_cast<size_t>(S & ~(1 << e))];
        if (v < kInfCost) best = std::min(best, dist_bit_ext(bits[i], e) + v);
      }
      f[static_cast<size_t>(i)][static_cast<size_t>(S)] = best;
    }
  }
  return f[0][static_cast<size_t>(nS - 1)];
}

}  // namespace detail

namespace {

using StateMap = std::unordered_map<uint64_t, std::map<int, Int>>;

void check_cap(const StateMap& states, const GridSpec& g) {
  if (states.size() > g.state_cap)
    throw ResourceBudgetExceeded("frontier state count " + std::to_string(states.size()) +
                                 " exceeds cap " + std::to_string(g.state_cap));
}

void prune_states(StateMap& states, const detail::PruneContext& pc, int col, int budget) {
  for (auto it = states.begin(); it != states.end();) {
    auto& poly = it->second;
    for (auto pit = poly.begin(); pit != poly.end();) {
      if (pit->second == 0) pit = poly.erase(pit); else ++pit;
    }
    bool drop = poly.empty();
    if (!drop && pc.enabled) {
      int lb = pc.lower_bound(it->first, col);
      drop = (lb >= detail::kInfCost) || (poly.begin()->first + lb > budget);
    }
    it = drop ? states.erase(it) : std::next(it);
  }
}

}  // namespace

KernelResult count_subgraphs_ref(const GridSpec& g) {
  detail::validate_grid(g);
  detail::PruneContext pc = detail::PruneContext::build(g);
  const int W = g.width, H = g.height, B = g.budget;

  StateMap states;
  states[0][0] = 1;
  size_t peak = 1;

  for (int x = 0; x < W; ++x) {
    for (int y = 0; y + 1 < H; ++y) {
      uint64_t T = uint64_t(3) << y;
      bool neg = detail::spec_mask(g.neg_vertical, x) >> y & 1;
      StateMap next;
      next.reserve(states.size() * 2);
      for (auto& [m, poly] : states) {
        auto& skip = next[m];
        for (auto& [d, c] : poly) skip[d] += c;
        auto& take = next[m ^ T];
        for (auto& [d, c] : poly) {
          if (d + 1 > B) break;
          if (neg) take[d + 1] -= c; else take[d + 1] += c;
        }
      }
      prune_states(next, pc, x, B);
      states = std::move(next);
      peak = std::max(peak, states.size());
      check_cap(states, g);
    }
    uint64_t target = detail::spec_mask(g.odd_mask, x);
    if (x == W - 1) {
      KernelResult res;
      res.counts.assign(static_cast<size_t>(B) + 1, Int(0));
      res.peak_states = peak;
      auto it = states.find(target);
      if (it != states.end())
        for (auto& [d, c] : it->second)
          if (d <= B) res.counts[static_cast<size_t>(d)] = c;
      return res;
    }
    uint64_t negh = detail::spec_mask(g.neg_horizontal, x);
    StateMap next;
    next.reserve(states.size());
    for (auto& [m, poly] : states) {
      uint64_t e = m ^ target;
      int cost = std::popcount(e);
      bool neg = std::popcount(e & negh) & 1;
      auto& acc = next[e];
      for (auto& [d, c] : poly) {
        if (d + cost > B) break;
        if (neg) acc[d + cost] -= c; else acc[d + cost] += c;
      }
    }
    prune_states(next, pc, x + 1, B);
    states = std::move(next);
    peak = std::max(peak, states.size());
    check_cap(states, g);
  }
  // width >= 1 guarantees the loop returned inside
  throw SeriesError("unreachable");
}

KernelResult count_subgraphs_brute(const GridSpec& g) {
  detail::validate_grid(g);
  struct Edge { int ax, ay, bx, by; bool neg; };
  std::vector<Edge> edges;
  for (int x = 0; x < g.width; ++x) {
    for (int y = 0; y < g.height; ++y) {
      if (y + 1 < g.height)
        edges.push_back({x, y, x, y + 1,
                         bool(detail::spec_mask(g.neg_vertical, x) >> y & 1)});
      if (x + 1 < g.width)
        edges.push_back({x, y, x + 1, y,
                         bool(detail::spec_mask(g.neg_horizontal, x) >> y & 1)});
    }
  }
  if (edges.size() > 26) throw WindowTooLarge("brute force beyond 26 edges");

  // odd-degree bookkeeping: one bit per vertex
  auto vid = [&](int x, int y) { return static_cast<size_t>(x * g.height + y); };
  std::vector<uint64_t> odd_target((static_cast<size_t>(g.width) * g.height + 63) / 64, 0);
  for (int x = 0; x < g.width; ++x) {
    uint64_t m = detail::spec_mask(g.odd_mask, x);
    while (m) {
      int y = std::countr_zero(m);
      m &= m - 1;
      odd_target[vid(x, y) / 64] ^= uint64_t(1) << (vid(x, y) % 64);
    }
  }
  size_t words = odd_target.size();
  std::vector<uint64_t> parity(words, 0);
  std::vector<long long> counts(static_cast<size_t>(g.budget) + 1, 0);
  int sz = 0, sgn = 1;
  uint64_t n = uint64_t(1) << edges.size();
  std::vector<char> in(edges.size(), 0);
  auto flip = [&](size_t i) {
    const Edge& e = edges[i];
    parity[vid(e.ax, e.ay) / 64] ^= uint64_t(1) << (vid(e.ax, e.ay) % 64);
    parity[vid(e.bx, e.by) / 64] ^= uint64_t(1) << (vid(e.bx, e.by) % 64);
    if (in[i]) { --sz; } else { ++sz; }
    if (e.neg) sgn = -sgn;
    in[i] ^= 1;
  };
  auto record = [&]() {
    if (sz > g.budget) return;
    for (size_t w = 0; w < words; ++w)
      if (parity[w] != odd_target[w]) return;
    counts[static_cast<size_t>(sz)] += sgn;
  };
  record();
  for (uint64_t k = 1; k < n; ++k) {
    flip(static_cast<size_t>(std::countr_zero(k)));
    record();
  }
  KernelResult res;
  res.counts.reserve(counts.size());
  for (long long c : counts) res.counts.emplace_back(c);
  res.peak_states = 0;
  return res;
}

}  // namespace isingser
