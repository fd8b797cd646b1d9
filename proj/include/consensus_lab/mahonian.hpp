#pragma once

#include <cstdint>
#include <vector>

#include "consensus_lab/detail/checked.hpp"
#include "consensus_lab/error.hpp"
#include "consensus_lab/prefs.hpp"

namespace consensus_lab {

/// Largest K whose Mahonian row fits in 64-bit counts (20! < 2^64).
inline constexpr int kMaxMahonianAlternatives = 20;

/// Row T(K, 0..K(K-1)/2) of permutation counts by number of inversions,
/// together with the parity statistics used by the collapse range.
struct MahonianTable {
  int alternatives = 0;
  std::vector<std::uint64_t> row;
  /// Number of k with T(K, k) odd.
  int odd_count = 0;
  /// odd_count / 2.
  int margin = 0;
};

/// Computes the row with T(K, k) = sum_{j=0}^{min(k, K-1)} T(K-1, k-j), using
/// prefix sums of the previous row. Overflow is reported, never wrapped.
inline MahonianTable mahonian_table(int alternatives) {
  require_alternatives(alternatives, kMaxMahonianAlternatives);
  std::vector<std::uint64_t> row{1};  // K = 1
  for (int k = 2; k <= alternatives; ++k) {
    const std::size_t width = row.size() + static_cast<std::size_t>(k - 1);
    std::vector<std::uint64_t> prefix(row.size() + 1, 0);
    for (std::size_t i = 0; i < row.size(); ++i) prefix[i + 1] = detail::checked_add(prefix[i], row[i]);
    std::vector<std::uint64_t> next(width, 0);
    for (std::size_t d = 0; d < width; ++d) {
      const std::size_t hi = std::min(d, row.size() - 1) + 1;
      const std::size_t lo = d >= static_cast<std::size_t>(k - 1) ? d - static_cast<std::size_t>(k - 1) : 0;
      next[d] = lo < hi ? prefix[hi] - prefix[lo] : 0;
    }
    row = std::move(next);
  }

  MahonianTable table{alternatives, std::move(row), 0, 0};
  for (const auto t : table.row) table.odd_count += static_cast<int>(t & 1U);
  if (table.odd_count % 2 != 0) {
    throw Error("odd number of odd Mahonian entries for K = " + std::to_string(alternatives));
  }
  table.margin = table.odd_count / 2;
  return table;
}

/// The margin c: levels 1 .. K!/2 - c are claimed equivalent.
inline int collapse_margin(int alternatives) { return mahonian_table(alternatives).margin; }

/// K!/2, the largest consensus level.
inline std::uint64_t max_level(int alternatives) {
  require_alternatives(alternatives, kMaxMahonianAlternatives);
  return detail::factorial(alternatives) / 2;
}

/// K!/2 - c, the last level of the collapse range.
inline std::uint64_t collapse_range_end(int alternatives) {
  return max_level(alternatives) - static_cast<std::uint64_t>(collapse_margin(alternatives));
}

/// (K-1)! <= K!/2 - c.
inline bool factorial_within_collapse_range(int alternatives) {
  return detail::factorial(alternatives - 1) <= collapse_range_end(alternatives);
}

}  // namespace consensus_lab
