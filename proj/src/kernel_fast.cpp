#include <algorithm>
#include <bit>
#include <cstring>

#include "kernel_common.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace isingser {

namespace {

using i128 = __int128;

struct Entry {
  uint64_t mask;
  int64_t slot;  // payload offset in the arena
  int32_t lo;    // lowest degree present
  int32_t hi;    // highest degree present; degrees step by 2 (parity invariant)
};

struct Table {
  std::vector<Entry> entries;  // sorted by mask
  std::vector<i128> arena;
};

inline size_t width_of(const Entry& e) {
  return static_cast<size_t>((e.hi - e.lo) / 2 + 1);
}

Int int_from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? 0 - static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  Int r = static_cast<unsigned long long>(u >> 64);
  r <<= 64;
  r += static_cast<unsigned long long>(u);
  return neg ? Int(-r) : r;
}

struct FastRun {
  const GridSpec& g;
  detail::PruneContext pc;
  bool use_cap = false;
  i128 abs_cap = 0;
  bool overflowed = false;
  size_t peak = 1;

  explicit FastRun(const GridSpec& spec) : g(spec), pc(detail::PruneContext::build(spec)) {}

  bool add_payload(i128& acc, i128 v) {
    if (__builtin_add_overflow(acc, v, &acc)) return true;
    if (use_cap && (acc > abs_cap || acc < -abs_cap)) return true;
    return false;
  }

  // -v overflows only for the minimum representable value (C++20 two's complement)
  static bool neg_overflows(i128 v) {
    return v == static_cast<i128>(static_cast<unsigned __int128>(1) << 127);
  }

  // Append one output state; src entries may alias the input table.
  // Returns false on accumulator overflow.
  bool emit(Table& out, uint64_t mm, int col,
            const Entry* se, const i128* sa,
            const Entry* te, const i128* ta, bool tneg) {
    const int B = g.budget;
    int slo = 0, shi = -1, tlo = 0, thi = -1;
    if (se) { slo = se->lo; shi = se->hi; }
    if (te) {
      tlo = te->lo + 1;
      thi = te->hi + 1;
      if (thi > B) thi = B - ((B - tlo) & 1);
      if (tlo > B) { te = nullptr; }
    }
    bool have_s = se != nullptr, have_t = te != nullptr;
    if (!have_s && !have_t) return true;
    int lo = have_s ? (have_t ? std::min(slo, tlo) : slo) : tlo;
    int hi = have_s ? (have_t ? std::max(shi, thi) : shi) : thi;
    if (pc.enabled) {
      int lb = pc.lower_bound(mm, col);
      if (lb >= detail::kInfCost || lo + lb > B) return true;
    }
    size_t slot = out.arena.size();
    size_t w = static_cast<size_t>((hi - lo) / 2 + 1);
    out.arena.resize(slot + w, 0);
    i128* dst = out.arena.data() + slot;
    if (have_s) {
      const i128* src = sa + se->slot;
      std::memcpy(dst + (slo - lo) / 2, src, width_of(*se) * sizeof(i128));
    }
    if (have_t) {
      const i128* src = ta + te->slot;
      i128* d = dst + (tlo - lo) / 2;
      size_t n = static_cast<size_t>((thi - tlo) / 2 + 1);
      for (size_t i = 0; i < n; ++i) {
        if (tneg && neg_overflows(src[i])) return false;
        if (add_payload(d[i], tneg ? -src[i] : src[i])) return false;
      }
    }
    out.entries.push_back(Entry{mm, static_cast<int64_t>(slot), lo, hi});
    return true;
  }

  // Vertical edge (y, y+1) in column x over the whole table.
  bool phase_v(Table& in, Table& out, int x, int y) {
    const uint64_t T = uint64_t(3) << y;
    const bool neg = detail::spec_mask(g.neg_vertical, x) >> y & 1;
    const size_t n = in.entries.size();
    // partitions: runs of constant high bits (above y+1); the skip and take
    // streams both stay inside a partition, so partitions are independent
    std::vector<size_t> part;
    part.push_back(0);
    for (size_t i = 1; i < n; ++i) {
      if ((in.entries[i].mask >> (y + 2)) != (in.entries[i - 1].mask >> (y + 2)))
        part.push_back(i);
    }
    part.push_back(n);
    const size_t nparts = part.size() - 1;

    std::vector<Table> locals(nparts);
    bool ok = true;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) reduction(&& : ok)
#endif
    for (size_t p = 0; p < nparts; ++p) {
      if (!ok) continue;
      size_t a = part[p], b = part[p + 1];
      Table& loc = locals[p];
      loc.entries.reserve(2 * (b - a));
      loc.arena.reserve(2 * (b - a) * 4);
      // sub-run boundaries by the two toggled bits
      size_t q[5];
      q[0] = a;
      for (int v = 1; v <= 4; ++v) {
        size_t loq = q[v - 1], hiq = b;
        while (loq < hiq) {
          size_t mid = (loq + hiq) / 2;
          if (((in.entries[mid].mask >> y) & 3) < static_cast<unsigned>(v)) loq = mid + 1;
          else hiq = mid;
        }
        q[v] = loq;
      }
      // take stream: sub-runs in order 3,2,1,0 (masks xor T come out sorted)
      static constexpr int ord[4] = {3, 2, 1, 0};
      int qi = 0;
      size_t tpos = q[3];
      auto tdone = [&]() { return qi == 4; };
      auto tadvance = [&]() {
        ++tpos;
        while (qi < 4 && tpos >= q[ord[qi] + 1]) {
          ++qi;
          if (qi < 4) tpos = q[ord[qi]];
        }
      };
      // position take stream at first nonempty sub-run
      if (tpos >= q[4]) { --tpos; tadvance(); }
      size_t si = a;
      bool local_ok = true;
      while (local_ok && (si < b || !tdone())) {
        uint64_t ms = si < b ? in.entries[si].mask : UINT64_MAX;
        uint64_t mt = !tdone() ? (in.entries[tpos].mask ^ T) : UINT64_MAX;
        if (ms < mt) {
          local_ok = emit(loc, ms, x, &in.entries[si], in.arena.data(), nullptr, nullptr, neg);
          ++si;
        } else if (mt < ms) {
          local_ok = emit(loc, mt, x, nullptr, nullptr, &in.entries[tpos], in.arena.data(), neg);
          tadvance();
        } else {
          local_ok = emit(loc, ms, x, &in.entries[si], in.arena.data(),
                          &in.entries[tpos], in.arena.data(), neg);
          ++si;
          tadvance();
        }
      }
      if (!local_ok) ok = false;
    }
    if (!ok) { overflowed = true; return false; }

    size_t tot_e = 0, tot_a = 0;
    for (auto& l : locals) { tot_e += l.entries.size(); tot_a += l.arena.size(); }
    out.entries.clear();
    out.arena.clear();
    out.entries.reserve(tot_e);
    out.arena.reserve(tot_a);
    for (auto& l : locals) {
      int64_t off = static_cast<int64_t>(out.arena.size());
      for (Entry e : l.entries) {
        e.slot += off;
        out.entries.push_back(e);
      }
      out.arena.insert(out.arena.end(), l.arena.begin(), l.arena.end());
    }
    return true;
  }

  // Forced horizontal transition from column x to x+1.
  bool phase_h(Table& in, Table& out, int x) {
    const int B = g.budget;
    const uint64_t target = detail::spec_mask(g.odd_mask, x);
    const uint64_t negh = detail::spec_mask(g.neg_horizontal, x);
    out.entries.clear();
    out.arena.clear();
    out.entries.reserve(in.entries.size());
    out.arena.reserve(in.arena.size());
    for (const Entry& e : in.entries) {
      uint64_t em = e.mask ^ target;
      int cost = std::popcount(em);
      int lo = e.lo + cost;
      if (lo > B) continue;
      int hi = e.hi + cost;
      if (hi > B) hi = B - ((B - lo) & 1);
      if (pc.enabled) {
        int lb = pc.lower_bound(em, x + 1);
        if (lb >= detail::kInfCost || lo + lb > B) continue;
      }
      bool neg = std::popcount(em & negh) & 1;
      size_t slot = out.arena.size();
      size_t w = static_cast<size_t>((hi - lo) / 2 + 1);
      const i128* src = in.arena.data() + e.slot;
      for (size_t i = 0; i < w; ++i) {
        if (neg && neg_overflows(src[i])) return false;
        out.arena.push_back(neg ? -src[i] : src[i]);
      }
      out.entries.push_back(Entry{em, static_cast<int64_t>(slot), lo, hi});
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const Entry& a, const Entry& b) { return a.mask < b.mask; });
    return true;
  }

  bool run(KernelResult& res) {
    const int W = g.width, H = g.height, B = g.budget;
    Table cur, nxt;
    cur.entries.push_back(Entry{0, 0, 0, 0});
    cur.arena.push_back(1);
    for (int x = 0; x < W; ++x) {
      for (int y = 0; y + 1 < H; ++y) {
        if (!phase_v(cur, nxt, x, y)) return false;
        std::swap(cur, nxt);
        peak = std::max(peak, cur.entries.size());
        if (cur.entries.size() > g.state_cap)
          throw ResourceBudgetExceeded("frontier state count " +
                                       std::to_string(cur.entries.size()) +
                                       " exceeds cap " + std::to_string(g.state_cap));
      }
      if (x == W - 1) break;
      if (!phase_h(cur, nxt, x)) return false;
      std::swap(cur, nxt);
      peak = std::max(peak, cur.entries.size());
      if (cur.entries.size() > g.state_cap)
        throw ResourceBudgetExceeded("frontier state count " +
                                     std::to_string(cur.entries.size()) +
                                     " exceeds cap " + std::to_string(g.state_cap));
    }
    res.counts.assign(static_cast<size_t>(B) + 1, Int(0));
    res.peak_states = peak;
    uint64_t final_mask = detail::spec_mask(g.odd_mask, W - 1);
    auto it = std::lower_bound(cur.entries.begin(), cur.entries.end(), final_mask,
                               [](const Entry& e, uint64_t m) { return e.mask < m; });
    if (it != cur.entries.end() && it->mask == final_mask) {
      const i128* src = cur.arena.data() + it->slot;
      for (int d = it->lo; d <= it->hi; d += 2)
        res.counts[static_cast<size_t>(d)] = int_from_i128(src[(d - it->lo) / 2]);
    }
    return true;
  }
};

}  // namespace

KernelResult count_subgraphs_fast_capped(const GridSpec& g,
                                         unsigned long long abs_cap,
                                         bool* overflowed) {
  detail::validate_grid(g);
  FastRun run(g);
  run.use_cap = true;
  run.abs_cap = static_cast<i128>(abs_cap);
  KernelResult res;
  bool done = run.run(res);
  if (overflowed) *overflowed = !done;
  if (!done) return count_subgraphs_ref(g);
  return res;
}

KernelResult count_subgraphs_fast(const GridSpec& g) {
  detail::validate_grid(g);
  FastRun run(g);
  KernelResult res;
  if (!run.run(res))
    throw ResourceBudgetExceeded("128-bit accumulator overflow in fast kernel");
  return res;
}

KernelResult count_subgraphs(const GridSpec& g) {
  detail::validate_grid(g);
  FastRun run(g);
  KernelResult res;
  if (!run.run(res)) return count_subgraphs_ref(g);
  return res;
}

}  // namespace isingser
