#pragma once

// Closeness of equal-size sets of relations to a center: C is at least as
// close as C2 when some one-to-one map C -> C2 never decreases the distance to
// the center, and strictly closer when in addition one distance increases.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "consensus_lab/error.hpp"
#include "consensus_lab/prefs.hpp"

namespace consensus_lab {

/// Largest set size the exhaustive injection search accepts.
inline constexpr std::size_t kMaxInjectionOracleSize = 8;

struct ClosenessWitness {
  /// Pairs (x, phi(x)); each x of the left set appears exactly once.
  std::vector<std::pair<PreferenceRelation, PreferenceRelation>> mapping;
  bool strict = false;
};

namespace detail {

inline void require_closeness_inputs(std::span<const PreferenceRelation> left,
                                     std::span<const PreferenceRelation> right,
                                     const PreferenceRelation& center) {
  if (left.empty() || right.empty()) throw ContractError("closeness needs nonempty sets");
  if (left.size() != right.size()) {
    throw ContractError("closeness needs sets of equal cardinality, got " +
                        std::to_string(left.size()) + " and " + std::to_string(right.size()));
  }
  auto check_side = [&](std::span<const PreferenceRelation> side, const char* name) {
    RelationSet sorted(side.begin(), side.end());
    for (const auto& r : sorted) require_same_size(r, center);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ContractError(std::string(name) + " set contains a repeated relation");
    }
    return sorted;
  };
  const auto l = check_side(left, "left");
  const auto r = check_side(right, "right");
  RelationSet common;
  std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(common));
  if (!common.empty()) throw ContractError("closeness needs disjoint sets");
}

/// Members ordered by (distance to center, lexicographic).
inline std::vector<std::pair<int, PreferenceRelation>> by_distance(
    std::span<const PreferenceRelation> members, const PreferenceRelation& center) {
  std::vector<std::pair<int, PreferenceRelation>> out;
  out.reserve(members.size());
  for (const auto& m : members) out.emplace_back(inversion_distance(m, center), m);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<ClosenessWitness> sorted_dominance(std::span<const PreferenceRelation> left,
                                                        std::span<const PreferenceRelation> right,
                                                        const PreferenceRelation& center,
                                                        bool strict) {
  require_closeness_inputs(left, right, center);
  const auto l = by_distance(left, center);
  const auto r = by_distance(right, center);
  bool differs = false;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].first > r[i].first) return std::nullopt;
    differs = differs || l[i].first < r[i].first;
  }
  // Equal sorted vectors leave no room for a strict slot: any
  // distance-nondecreasing bijection preserves the distance total.
  if (strict && !differs) return std::nullopt;
  ClosenessWitness w;
  w.strict = differs;
  for (std::size_t i = 0; i < l.size(); ++i) w.mapping.emplace_back(l[i].second, r[i].second);
  return w;
}

}  // namespace detail

/// Decides C >=_center C2 by sorted-distance dominance and returns the
/// sorted pairing as witness.
inline std::optional<ClosenessWitness> at_least_as_close(std::span<const PreferenceRelation> left,
                                                         std::span<const PreferenceRelation> right,
                                                         const PreferenceRelation& center) {
  return detail::sorted_dominance(left, right, center, false);
}

/// Decides C >_center C2: dominance holds and the sorted distance vectors differ.
inline std::optional<ClosenessWitness> closer_than(std::span<const PreferenceRelation> left,
                                                   std::span<const PreferenceRelation> right,
                                                   const PreferenceRelation& center) {
  return detail::sorted_dominance(left, right, center, true);
}

/// Searches every bijection left -> right for one satisfying the closeness
/// inequalities directly. Test oracle for the dominance path.
inline std::optional<ClosenessWitness> injection_oracle(std::span<const PreferenceRelation> left,
                                                        std::span<const PreferenceRelation> right,
                                                        const PreferenceRelation& center,
                                                        bool strict) {
  detail::require_closeness_inputs(left, right, center);
  if (left.size() > kMaxInjectionOracleSize) {
    throw CapacityError("injection oracle limited to sets of size " +
                        std::to_string(kMaxInjectionOracleSize) + ", got " +
                        std::to_string(left.size()));
  }
  std::vector<int> dl;
  std::vector<int> dr;
  for (const auto& x : left) dl.push_back(inversion_distance(x, center));
  for (const auto& y : right) dr.push_back(inversion_distance(y, center));
  std::vector<std::size_t> image(right.size());
  std::iota(image.begin(), image.end(), 0);
  do {
    bool ok = true;
    bool has_strict = false;
    for (std::size_t i = 0; i < left.size() && ok; ++i) {
      ok = dl[i] <= dr[image[i]];
      has_strict = has_strict || dl[i] < dr[image[i]];
    }
    if (ok && (!strict || has_strict)) {
      ClosenessWitness w;
      w.strict = has_strict;
      for (std::size_t i = 0; i < left.size(); ++i) w.mapping.emplace_back(left[i], right[image[i]]);
      return w;
    }
  } while (std::next_permutation(image.begin(), image.end()));
  return std::nullopt;
}

/// Checks a witness against the defining inequalities without trusting the
/// procedure that produced it.
inline bool witness_is_valid(const ClosenessWitness& witness,
                             std::span<const PreferenceRelation> left,
                             std::span<const PreferenceRelation> right,
                             const PreferenceRelation& center) {
  if (witness.mapping.size() != left.size()) return false;
  RelationSet domain;
  RelationSet image;
  bool has_strict = false;
  for (const auto& [x, y] : witness.mapping) {
    const int dx = inversion_distance(x, center);
    const int dy = inversion_distance(y, center);
    if (dx > dy) return false;
    has_strict = has_strict || dx < dy;
    domain.push_back(x);
    image.push_back(y);
  }
  if (witness.strict && !has_strict) return false;
  RelationSet l(left.begin(), left.end());
  RelationSet r(right.begin(), right.end());
  std::sort(domain.begin(), domain.end());
  std::sort(image.begin(), image.end());
  std::sort(l.begin(), l.end());
  std::sort(r.begin(), r.end());
  if (domain != l) return false;
  // image sorted and unique iff phi is one-to-one into right
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  return std::includes(r.begin(), r.end(), image.begin(), image.end());
}

}  // namespace consensus_lab
