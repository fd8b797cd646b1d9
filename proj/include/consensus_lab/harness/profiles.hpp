#pragma once

// Profile sources for verification campaigns: exhaustive count-vector
// enumeration, a distance-decay sampler, and profiles whose counts are
// constant on each distance class.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "consensus_lab/detail/checked.hpp"
#include "consensus_lab/detail/random.hpp"
#include "consensus_lab/error.hpp"
#include "consensus_lab/mahonian.hpp"
#include "consensus_lab/prefs.hpp"

namespace consensus_lab::harness {

/// Visits every vector of `parts` nonnegative integers summing to `total`,
/// in lexicographically decreasing order (all mass on the first part first).
inline void for_each_composition(std::size_t parts, std::uint64_t total,
                                 const std::function<void(std::span<const std::uint64_t>)>& visit) {
  std::vector<std::uint64_t> v(parts, 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
    if (i + 1 == parts) {
      v[i] = left;
      visit(v);
      return;
    }
    for (std::uint64_t x = left + 1; x-- > 0;) {
      v[i] = x;
      rec(i + 1, left - x);
    }
  };
  if (parts == 0) return;
  rec(0, total);
}

/// Every profile over K alternatives with n_min <= n <= n_max, ordered by n
/// then by composition order.
inline std::vector<Profile> all_profiles(int alternatives, std::uint64_t n_min, std::uint64_t n_max) {
  require_alternatives(alternatives);
  const auto parts = static_cast<std::size_t>(consensus_lab::detail::factorial(alternatives));
  std::vector<Profile> out;
  for (std::uint64_t n = std::max<std::uint64_t>(1, n_min); n <= n_max; ++n) {
    for_each_composition(parts, n, [&](std::span<const std::uint64_t> counts) {
      out.emplace_back(alternatives, std::vector<std::uint64_t>(counts.begin(), counts.end()));
    });
  }
  return out;
}

/// Draws n relations independently with weight theta^d(relation, center).
inline Profile generate_profile(const PreferenceRelation& center, double theta, std::uint64_t n,
                                std::uint64_t seed) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw ContractError("theta must lie in (0, 1], got " + std::to_string(theta));
  }
  if (n == 0) throw ContractError("a generated profile needs n >= 1");
  const int k = center.size();
  const auto all = enumerate_relations(k);
  std::vector<double> cumulative;
  cumulative.reserve(all.size());
  double acc = 0.0;
  for (const auto& r : all) {
    acc += std::pow(theta, inversion_distance(r, center));
    cumulative.push_back(acc);
  }
  consensus_lab::detail::Rng rng(seed);
  std::vector<std::uint64_t> counts(all.size(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng.unit() * acc;
    std::size_t pick = 0;
    while (pick + 1 < cumulative.size() && cumulative[pick] <= u) ++pick;
    ++counts[pick];
  }
  return Profile(k, std::move(counts));
}

/// Nonincreasing per-class counts m_0 >= m_1 >= ... with every member of
/// class k held by m_k individuals.
struct ClassCounts {
  std::vector<std::uint64_t> per_class;
  std::uint64_t total = 0;
};

/// All nonconstant nonincreasing class-count vectors whose profile size lies
/// in [1, n_max]. These are exactly the profiles with level-1 consensus.
inline std::vector<ClassCounts> monotone_class_counts(int alternatives, std::uint64_t n_max) {
  const auto row = mahonian_table(alternatives).row;
  std::vector<ClassCounts> out;
  std::vector<std::uint64_t> m(row.size(), 0);
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec =
      [&](std::size_t k, std::uint64_t cap, std::uint64_t used) {
        if (k == row.size()) {
          if (used >= 1 && m.front() != m.back()) out.push_back({m, used});
          return;
        }
        for (std::uint64_t v = 0; v <= cap && used + v * row[k] <= n_max; ++v) {
          m[k] = v;
          rec(k + 1, v, used + v * row[k]);
        }
        m[k] = 0;
      };
  rec(0, n_max, 0);
  return out;
}

inline Profile class_profile(const PreferenceRelation& center, const ClassCounts& counts) {
  const auto all = enumerate_relations(center.size());
  std::vector<std::uint64_t> v(all.size(), 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    v[i] = counts.per_class[static_cast<std::size_t>(inversion_distance(all[i], center))];
  }
  return Profile(center.size(), std::move(v));
}

/// Moves one individual from a random held relation to a different random relation.
inline Profile perturb(const Profile& profile, consensus_lab::detail::Rng& rng) {
  std::vector<std::uint64_t> counts(profile.counts().begin(), profile.counts().end());
  std::uint64_t pick = rng.below(profile.total());
  std::size_t from = 0;
  while (pick >= counts[from]) pick -= counts[from++];
  std::size_t to = static_cast<std::size_t>(rng.below(counts.size() - 1));
  if (to >= from) ++to;
  --counts[from];
  ++counts[to];
  return Profile(profile.alternatives(), std::move(counts));
}

}  // namespace consensus_lab::harness
