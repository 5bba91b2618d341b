#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "isingser/kernel.hpp"

namespace isingser::detail {

inline constexpr int kInfCost = 1 << 28;

inline uint64_t spec_mask(const std::vector<uint64_t>& v, int x) {
  return (x >= 0 && static_cast<size_t>(x) < v.size()) ? v[static_cast<size_t>(x)] : 0;
}

void validate_grid(const GridSpec& g);

// Admissible completion bound.  A frontier state at column c (any point of
// the vertical phase) with accumulated parity mask m can only finish if the
// future edge set's odd-degree vertices are exactly the current deviation
// (m xor odd_mask[c], all in column c) plus the targets of later columns.
// Any such edge set decomposes into paths pairing those vertices up, so its
// size is at least the minimum Manhattan matching — computed exactly here by
// a non-crossing DP over the sorted in-column bits with <=4 external targets.
struct PruneContext {
  bool enabled = false;
  int height = 0;
  std::vector<uint64_t> fold;             // odd_mask per column
  std::vector<std::array<std::array<int, 2>, 4>> fut;  // future targets per column
  std::vector<int> fut_n;                 // -1: too many targets, bound disabled

  static PruneContext build(const GridSpec& g);
  int lower_bound(uint64_t mask, int c) const;
};

}  // namespace isingser::detail
