#pragma once

#include <cstdint>
#include <string>

#include "consensus_lab/error.hpp"

namespace consensus_lab::detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("unsigned addition overflow: " + std::to_string(a) + " + " +
                        std::to_string(b));
  }
  return out;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("unsigned multiplication overflow: " + std::to_string(a) + " * " +
                        std::to_string(b));
  }
  return out;
}

inline std::uint64_t factorial(int k) {
  std::uint64_t out = 1;
  for (int i = 2; i <= k; ++i) out = checked_mul(out, static_cast<std::uint64_t>(i));
  return out;
}

/// Binomial coefficient, saturating at UINT64_MAX instead of throwing. Only
/// used for search-budget estimates.
inline std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(out);
}

}  // namespace consensus_lab::detail
