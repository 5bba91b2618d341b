// Timing comparison of the two subgraph-counting kernels on representative
// sweep shapes. The flat OpenMP kernel and the hash-map reference must agree
// exactly; the table reports wall time, speedup, and peak frontier states.
// Usage: kernel_bench [reps]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <isingser/kernel.hpp>
#include <isingser/oracle_ht.hpp>

using namespace isingser;

namespace {

struct Case {
  std::string name;
  GridSpec grid;
};

GridSpec plain_grid(int width, int height, int budget) {
  GridSpec g;
  g.width = width;
  g.height = height;
  g.budget = budget;
  return g;
}

// two odd-degree sites on a row, like the high-temperature numerator sweeps
GridSpec pair_grid(int width, int height, int budget, int x0, int x1, int y) {
  GridSpec g = plain_grid(width, height, budget);
  g.odd_mask.assign(static_cast<size_t>(width), 0);
  g.odd_mask[static_cast<size_t>(x0)] = uint64_t(1) << y;
  g.odd_mask[static_cast<size_t>(x1)] = uint64_t(1) << y;
  return g;
}

// a sign-flipped dual cut, like the low-temperature sweeps
GridSpec cut_grid(int width, int height, int budget, int from, int to, int y) {
  GridSpec g = plain_grid(width, height, budget);
  g.neg_vertical.assign(static_cast<size_t>(width), 0);
  for (int x = from; x < to; ++x) g.neg_vertical[static_cast<size_t>(x)] = uint64_t(1) << y;
  return g;
}

double best_seconds(int reps, const GridSpec& g, KernelResult (*kernel)(const GridSpec&),
                    KernelResult* out) {
  double best = 1e100;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    KernelResult res = kernel(g);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt < best) best = dt;
    *out = std::move(res);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  if (reps < 1) {
    std::fprintf(stderr, "usage: kernel_bench [reps >= 1]\n");
    return 1;
  }

  std::vector<Case> cases;
  cases.push_back({"closed 18x12 d24", plain_grid(18, 12, 24)});
  cases.push_back({"pair 20x11 d26", pair_grid(20, 11, 26, 4, 15, 5)});
  cases.push_back({"cut 18x12 d26", cut_grid(18, 12, 26, 6, 12, 5)});

  std::printf("threads available: %d, reps per case: %d\n", omp_get_max_threads(), reps);
  std::printf("%-18s %10s %10s %8s %12s\n", "case", "ref s", "fast s", "speedup",
              "peak states");
  bool all_equal = true;
  for (const auto& c : cases) {
    KernelResult ref_res, fast_res;
    const double ref_s = best_seconds(reps, c.grid, count_subgraphs_ref, &ref_res);
    const double fast_s = best_seconds(reps, c.grid, count_subgraphs_fast, &fast_res);
    const bool equal = ref_res.counts == fast_res.counts;
    all_equal = all_equal && equal;
    std::printf("%-18s %10.3f %10.3f %7.2fx %12zu%s\n", c.name.c_str(), ref_s, fast_s,
                ref_s / fast_s, fast_res.peak_states, equal ? "" : "  MISMATCH");
  }
  if (!all_equal) {
    std::fprintf(stderr, "kernel disagreement\n");
    return 1;
  }
  return 0;
}
