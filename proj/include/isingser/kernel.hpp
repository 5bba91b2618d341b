#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "isingser/rational.hpp"
#include "isingser/series.hpp"

namespace isingser {

struct ResourceBudgetExceeded : SeriesError { using SeriesError::SeriesError; };
struct WindowTooLarge : SeriesError { using SeriesError::SeriesError; };

// Rectangular grid-graph enumeration job.
//
// Vertices (x, y) with 0 <= x < width, 0 <= y < height; vertical edges
// (x,y)-(x,y+1) and horizontal edges (x,y)-(x+1,y).  The kernel returns, for
// every d <= budget, the signed count of edge subsets S with |S| = d whose
// odd-degree vertex set is exactly {(x,y) : odd_mask[x] >> y & 1}.  The sign
// of S is (-1)^{|S ∩ negative edges|}.
struct GridSpec {
  int width = 0;
  int height = 0;  // frontier dimension; must be <= 62
  int budget = 0;
  std::vector<uint64_t> odd_mask;        // per column; empty means all zero
  std::vector<uint64_t> neg_vertical;    // per column; bit y = edge (x,y)-(x,y+1)
  std::vector<uint64_t> neg_horizontal;  // per gap x->x+1; bit y
  std::size_t state_cap = std::size_t(1) << 22;
  // Drop frontier states that provably cannot reach a valid completion within
  // budget.  Correctness-neutral; switchable for equivalence tests.
  bool enable_prune = true;
};

struct KernelResult {
  std::vector<Int> counts;  // size budget+1, counts[d] for subsets of d edges
  std::size_t peak_states = 0;
};

// Serial reference: hash map of frontier states, GMP integer payloads.
KernelResult count_subgraphs_ref(const GridSpec& g);

// Flat sorted-array kernel: 128-bit accumulators, OpenMP-parallel merges.
// Throws ResourceBudgetExceeded past state_cap; overflow of the 128-bit
// accumulators is detected and reported via count_subgraphs fallback.
KernelResult count_subgraphs_fast(const GridSpec& g);

// Entry point used by the oracles: fast kernel, falling back to the
// reference kernel in the (detected) event of 128-bit overflow.
KernelResult count_subgraphs(const GridSpec& g);

// Exhaustive 2^|edges| enumeration for testing; WindowTooLarge beyond 26 edges.
KernelResult count_subgraphs_brute(const GridSpec& g);

// Test hook for the overflow path: treat |accumulator| > abs_cap as overflow.
KernelResult count_subgraphs_fast_capped(const GridSpec& g,
                                         unsigned long long abs_cap,
                                         bool* overflowed);

}  // namespace isingser
