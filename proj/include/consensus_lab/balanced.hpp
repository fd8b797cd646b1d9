#pragma once

// m-balanced pairs around a center: disjoint m-sets that take the same number
// of members from every distance class. Such pairs admit a bijection that
// preserves distance to the center, so each set is at least as close as the
// other.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "consensus_lab/error.hpp"
#include "consensus_lab/prefs.hpp"

namespace consensus_lab {

struct BalancedPair {
  RelationSet left;
  RelationSet right;
  std::uint64_t m = 0;
  PreferenceRelation center;
};

using RelationMapping = std::vector<std::pair<PreferenceRelation, PreferenceRelation>>;

namespace detail {

inline std::vector<std::uint64_t> class_histogram(const RelationSet& members,
                                                  const PreferenceRelation& center) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(max_distance(center.size()) + 1), 0);
  for (const auto& r : members) ++out[static_cast<std::size_t>(inversion_distance(r, center))];
  return out;
}

}  // namespace detail

/// Disjoint, both of size m, equal membership in every distance class.
inline bool is_balanced(const BalancedPair& pair) {
  for (const auto* side : {&pair.left, &pair.right}) {
    for (const auto& r : *side) {
      if (r.size() != pair.center.size()) return false;
    }
  }
  RelationSet l = pair.left;
  RelationSet r = pair.right;
  std::sort(l.begin(), l.end());
  std::sort(r.begin(), r.end());
  if (std::adjacent_find(l.begin(), l.end()) != l.end()) return false;
  if (std::adjacent_find(r.begin(), r.end()) != r.end()) return false;
  RelationSet common;
  std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(common));
  if (!common.empty()) return false;
  if (l.size() != pair.m || r.size() != pair.m) return false;
  return detail::class_histogram(l, pair.center) == detail::class_histogram(r, pair.center);
}

/// Builds a (K!/2 - c)-balanced pair with `first` on the left and `second` on
/// the right. Every interior class of odd size drops its lexicographically
/// smallest member other than `first`/`second`; each pruned interior class is
/// then split in half, the left half holding `first` (if present), never
/// `second`, and otherwise the lexicographically smallest remaining members.
/// Classes 0 and K(K-1)/2 contribute nothing.
inline BalancedPair construct_balanced_pair(const PreferenceRelation& center,
                                            const PreferenceRelation& first,
                                            const PreferenceRelation& second) {
  require_same_size(center, first);
  require_same_size(center, second);
  if (first == second) throw ContractError("balanced pair needs two different relations");
  const PreferenceRelation far = reversal(center);
  for (const auto* r : {&first, &second}) {
    if (*r == center || *r == far) {
      throw ContractError("balanced pair members must differ from the center and its reversal");
    }
  }

  const auto table = distance_classes(center);
  const auto top = table.classes.size() - 1;
  BalancedPair pair{{}, {}, 0, center};
  for (std::size_t k = 1; k < top; ++k) {
    RelationSet pruned = table.classes[k];
    if (pruned.size() % 2 == 1) {
      const auto drop = std::find_if(pruned.begin(), pruned.end(), [&](const PreferenceRelation& r) {
        return r != first && r != second;
      });
      if (drop == pruned.end()) throw Error("odd interior class without a droppable member");
      pruned.erase(drop);
    }
    const std::size_t half = pruned.size() / 2;
    std::vector<bool> in_left(pruned.size(), false);
    std::size_t taken = 0;
    for (std::size_t i = 0; i < pruned.size(); ++i) {
      if (pruned[i] == first) {
        in_left[i] = true;
        ++taken;
      }
    }
    for (std::size_t i = 0; i < pruned.size() && taken < half; ++i) {
      if (!in_left[i] && pruned[i] != second) {
        in_left[i] = true;
        ++taken;
      }
    }
    for (std::size_t i = 0; i < pruned.size(); ++i) {
      (in_left[i] ? pair.left : pair.right).push_back(pruned[i]);
    }
  }
  std::sort(pair.left.begin(), pair.left.end());
  std::sort(pair.right.begin(), pair.right.end());
  pair.m = pair.left.size();
  return pair;
}

/// One-to-one map left -> right preserving distance to the center, built
/// class by class, pairing members of each class in lexicographic order.
inline RelationMapping distance_preserving_bijection(const BalancedPair& pair) {
  if (!is_balanced(pair)) throw ContractError("distance-preserving bijection needs a balanced pair");
  const auto classes = static_cast<std::size_t>(max_distance(pair.center.size()) + 1);
  std::vector<RelationSet> left(classes);
  std::vector<RelationSet> right(classes);
  for (const auto& r : pair.left) left[static_cast<std::size_t>(inversion_distance(r, pair.center))].push_back(r);
  for (const auto& r : pair.right) right[static_cast<std::size_t>(inversion_distance(r, pair.center))].push_back(r);
  RelationMapping phi;
  for (std::size_t k = 0; k < classes; ++k) {
    std::sort(left[k].begin(), left[k].end());
    std::sort(right[k].begin(), right[k].end());
    for (std::size_t i = 0; i < left[k].size(); ++i) phi.emplace_back(left[k][i], right[k][i]);
  }
  return phi;
}

}  // namespace consensus_lab
