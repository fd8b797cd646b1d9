#pragma once

// Level-r consensus of a profile around a center relation.
//
// A profile exhibits consensus of level r around the center when
//   (1) for all disjoint r-sets C, C2 with C >= C2 (closeness), mu(C) >= mu(C2), and
//   (2) some disjoint r-sets C, C2 have C > C2 and mu(C) > mu(C2).
//
// Two deciders are provided. The brute-force one enumerates every ordered
// pair of disjoint r-subsets and asks the closeness module. The fast one
// works in count-vector space: closeness between C and C2 depends only on how
// many members each takes from every distance class, and for fixed per-class
// counts the extreme values of mu(C) - mu(C2) come from taking the smallest
// (largest) counts inside each class. A dynamic program over the classes
// optimizes that extreme over all admissible count-vector pairs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "consensus_lab/closeness.hpp"
#include "consensus_lab/detail/checked.hpp"
#include "consensus_lab/error.hpp"
#include "consensus_lab/mahonian.hpp"
#include "consensus_lab/prefs.hpp"

namespace consensus_lab {

/// Default limit on ordered subset pairs examined by the brute-force checker.
inline constexpr std::uint64_t kDefaultBruteforceBudget = 5'000'000;

/// Per-distance-class membership counts of a pair of disjoint r-sets.
struct CountVectorPair {
  std::vector<std::uint64_t> left;
  std::vector<std::uint64_t> right;
  std::uint64_t r = 0;

  /// Sums match r, c_k + c2_k <= class size, and left prefix-dominates right.
  [[nodiscard]] bool is_valid(std::span<const std::uint64_t> class_sizes) const {
    if (left.size() != class_sizes.size() || right.size() != class_sizes.size()) return false;
    std::uint64_t sl = 0;
    std::uint64_t sr = 0;
    for (std::size_t k = 0; k < class_sizes.size(); ++k) {
      if (left[k] + right[k] > class_sizes[k]) return false;
      sl += left[k];
      sr += right[k];
      if (sl < sr) return false;
    }
    return sl == r && sr == r;
  }

  friend bool operator==(const CountVectorPair&, const CountVectorPair&) = default;
};

/// A concrete pair of disjoint r-sets with their profile counts.
struct LevelWitness {
  RelationSet left;
  RelationSet right;
  std::uint64_t left_count = 0;
  std::uint64_t right_count = 0;
};

struct LevelVerdict {
  std::uint64_t level = 0;
  bool holds = false;
  /// Condition (1): closeness is respected by the counts.
  bool respects_closeness = false;
  /// Condition (2): some strict closeness is strictly reflected in counts.
  bool has_strict_agreement = false;
  /// Present when condition (1) fails: left >= right but mu(left) < mu(right).
  std::optional<LevelWitness> violation;
  /// Present when condition (2) holds: left > right and mu(left) > mu(right).
  std::optional<LevelWitness> strict_example;
  /// False when the verdict was copied from level 1 by the collapse shortcut.
  bool evaluated = true;
};

inline void require_level(int alternatives, std::uint64_t r) {
  const std::uint64_t top = max_level(alternatives);
  if (r < 1 || r > top) {
    throw ContractError("level r = " + std::to_string(r) + " outside 1.." + std::to_string(top));
  }
}

namespace detail {

inline void require_compatible(const Profile& profile, const PreferenceRelation& center) {
  if (profile.alternatives() != center.size()) {
    throw DimensionError("profile over K = " + std::to_string(profile.alternatives()) +
                         " but center over K = " + std::to_string(center.size()));
  }
  if (profile.total() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw OverflowError("profile total exceeds the signed 64-bit range");
  }
}

/// Relation indices grouped by distance from the center, each class ordered
/// by (count ascending, lexicographic).
struct ClassOrder {
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::vector<std::int64_t>> smallest;  // smallest[k][c]: sum of c smallest counts
  std::vector<std::vector<std::int64_t>> largest;   // largest[k][c]: sum of c largest counts
};

inline ClassOrder order_classes(const Profile& profile, const PreferenceRelation& center) {
  const auto k_max = static_cast<std::size_t>(max_distance(center.size()));
  ClassOrder out;
  out.members.resize(k_max + 1);
  const auto all = enumerate_relations(center.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    out.members[static_cast<std::size_t>(inversion_distance(all[i], center))].push_back(i);
  }
  out.smallest.resize(k_max + 1);
  out.largest.resize(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    auto& m = out.members[k];
    std::stable_sort(m.begin(), m.end(), [&](std::size_t a, std::size_t b) {
      return profile.count_at(a) < profile.count_at(b);
    });
    out.smallest[k].assign(m.size() + 1, 0);
    out.largest[k].assign(m.size() + 1, 0);
    for (std::size_t c = 0; c < m.size(); ++c) {
      out.smallest[k][c + 1] = out.smallest[k][c] + static_cast<std::int64_t>(profile.count_at(m[c]));
      out.largest[k][c + 1] =
          out.largest[k][c] + static_cast<std::int64_t>(profile.count_at(m[m.size() - 1 - c]));
    }
  }
  return out;
}

/// Extreme of mu(left) - mu(right) over admissible count-vector pairs at
/// level r. Minimizing, the left set takes the smallest counts of each class
/// and the right the largest (condition 1 search); maximizing flips the
/// roles (condition 2 search). With `require_difference` only pairs whose
/// vectors differ somewhere are admitted.
struct ExtremePair {
  std::int64_t value = 0;
  CountVectorPair vectors;
};

inline std::optional<ExtremePair> extreme_pair(const ClassOrder& order, std::uint64_t r,
                                               bool minimize, bool require_difference) {
  const std::size_t classes = order.members.size();
  const std::size_t side = static_cast<std::size_t>(r) + 1;
  const std::size_t flags = require_difference ? 2 : 1;
  const std::size_t states = side * side * flags;
  auto at = [&](std::size_t a, std::size_t b, std::size_t f) { return (a * side + b) * flags + f; };

  struct Cell {
    bool reachable = false;
    std::int64_t value = 0;
    std::uint32_t c_left = 0;
    std::uint32_t c_right = 0;
    std::uint32_t from = 0;
  };
  std::vector<std::vector<Cell>> table(classes + 1, std::vector<Cell>(states));
  table[0][at(0, 0, 0)].reachable = true;
  auto better = [minimize](std::int64_t candidate, std::int64_t incumbent) {
    return minimize ? candidate < incumbent : candidate > incumbent;
  };

  for (std::size_t k = 0; k < classes; ++k) {
    const std::size_t size = order.members[k].size();
    const auto& low = order.smallest[k];
    const auto& high = order.largest[k];
    for (std::size_t a = 0; a < side; ++a) {
      for (std::size_t b = 0; b <= a; ++b) {
        for (std::size_t f = 0; f < flags; ++f) {
          const Cell& cur = table[k][at(a, b, f)];
          if (!cur.reachable) continue;
          for (std::size_t cl = 0; cl <= size && a + cl < side; ++cl) {
            for (std::size_t cr = 0; cl + cr <= size && b + cr < side; ++cr) {
              const std::size_t na = a + cl;
              const std::size_t nb = b + cr;
              if (na < nb) continue;  // prefix dominance
              const std::size_t nf = require_difference ? (f | static_cast<std::size_t>(cl != cr)) : 0;
              const std::int64_t gain = minimize ? low[cl] - high[cr] : high[cl] - low[cr];
              const std::int64_t value = cur.value + gain;
              Cell& next = table[k + 1][at(na, nb, nf)];
              if (!next.reachable || better(value, next.value)) {
                next = Cell{true, value, static_cast<std::uint32_t>(cl),
                            static_cast<std::uint32_t>(cr), static_cast<std::uint32_t>(at(a, b, f))};
              }
            }
          }
        }
      }
    }
  }

  const std::size_t goal = at(side - 1, side - 1, flags - 1);
  if (!table[classes][goal].reachable) return std::nullopt;
  ExtremePair out;
  out.value = table[classes][goal].value;
  out.vectors.r = r;
  out.vectors.left.assign(classes, 0);
  out.vectors.right.assign(classes, 0);
  std::size_t state = goal;
  for (std::size_t k = classes; k > 0; --k) {
    const Cell& cell = table[k][state];
    out.vectors.left[k - 1] = cell.c_left;
    out.vectors.right[k - 1] = cell.c_right;
    state = cell.from;
  }
  return out;
}

/// Realizes a count-vector pair: `low` sides take the head of each class
/// order, the other side takes the tail. Disjoint because c + c2 <= size.
inline LevelWitness realize(const Profile& profile, const ClassOrder& order,
                            const CountVectorPair& vectors, bool left_low) {
  LevelWitness w;
  const int k = profile.alternatives();
  for (std::size_t d = 0; d < order.members.size(); ++d) {
    const auto& m = order.members[d];
    auto take_head = [&](std::uint64_t count, RelationSet& into) {
      for (std::size_t i = 0; i < count; ++i) into.push_back(PreferenceRelation::from_index(k, m[i]));
    };
    auto take_tail = [&](std::uint64_t count, RelationSet& into) {
      for (std::size_t i = 0; i < count; ++i) {
        into.push_back(PreferenceRelation::from_index(k, m[m.size() - 1 - i]));
      }
    };
    if (left_low) {
      take_head(vectors.left[d], w.left);
      take_tail(vectors.right[d], w.right);
    } else {
      take_tail(vectors.left[d], w.left);
      take_head(vectors.right[d], w.right);
    }
  }
  std::sort(w.left.begin(), w.left.end());
  std::sort(w.right.begin(), w.right.end());
  w.left_count = count_set(profile, w.left);
  w.right_count = count_set(profile, w.right);
  return w;
}

/// Visits every r-subset of {0..n-1} (as sorted index lists) in lexicographic order.
template <typename Visitor>
bool for_each_combination(std::span<const std::size_t> pool, std::size_t r, Visitor&& visit) {
  std::vector<std::size_t> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = i;
  std::vector<std::size_t> chosen(r);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) chosen[i] = pool[pick[i]];
    if (!visit(std::span<const std::size_t>(chosen))) return false;
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == pool.size() - r + i - 1) --i;
    if (i == 0) return true;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

/// Number of ordered pairs of disjoint r-subsets of K! relations.
inline std::uint64_t bruteforce_pair_count(int alternatives, std::uint64_t r) {
  const std::uint64_t n = detail::factorial(alternatives);
  const std::uint64_t a = detail::binomial_saturating(n, r);
  const std::uint64_t b = detail::binomial_saturating(n - r, r);
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

/// Decides level-r consensus by enumerating every ordered pair of disjoint
/// r-sets (C, C2) and consulting the closeness relation directly.
inline LevelVerdict exhibits_level_r_bruteforce(const Profile& profile,
                                                const PreferenceRelation& center, std::uint64_t r,
                                                std::uint64_t budget = kDefaultBruteforceBudget) {
  detail::require_compatible(profile, center);
  const int k = center.size();
  require_level(k, r);
  const std::uint64_t pairs = bruteforce_pair_count(k, r);
  if (pairs > budget) {
    throw CapacityError("brute-force level check needs " + std::to_string(pairs) +
                        " subset pairs, budget is " + std::to_string(budget) +
                        "; use the fast checker");
  }
  const auto all = enumerate_relations(k);
  std::vector<std::size_t> everything(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) everything[i] = i;

  LevelVerdict verdict;
  verdict.level = r;
  verdict.respects_closeness = true;
  auto materialize = [&](std::span<const std::size_t> ids) {
    RelationSet out;
    out.reserve(ids.size());
    for (const auto i : ids) out.push_back(all[i]);
    return out;
  };

  detail::for_each_combination(everything, static_cast<std::size_t>(r), [&](std::span<const std::size_t> left_ids) {
    std::vector<std::size_t> rest;
    std::set_difference(everything.begin(), everything.end(), left_ids.begin(), left_ids.end(),
                        std::back_inserter(rest));
    const RelationSet left = materialize(left_ids);
    const std::uint64_t mu_left = count_set(profile, left);
    return detail::for_each_combination(rest, static_cast<std::size_t>(r), [&](std::span<const std::size_t> right_ids) {
      const RelationSet right = materialize(right_ids);
      const std::uint64_t mu_right = count_set(profile, right);
      if (verdict.respects_closeness && mu_left < mu_right && at_least_as_close(left, right, center)) {
        verdict.respects_closeness = false;
        verdict.violation = LevelWitness{left, right, mu_left, mu_right};
      }
      if (!verdict.has_strict_agreement && mu_left > mu_right && closer_than(left, right, center)) {
        verdict.has_strict_agreement = true;
        verdict.strict_example = LevelWitness{left, right, mu_left, mu_right};
      }
      return verdict.respects_closeness || !verdict.has_strict_agreement;
    });
  });
  verdict.holds = verdict.respects_closeness && verdict.has_strict_agreement;
  return verdict;
}

/// Same semantics as exhibits_level_r_bruteforce, decided in count-vector space.
inline LevelVerdict exhibits_level_r_fast(const Profile& profile, const PreferenceRelation& center,
                                          std::uint64_t r) {
  detail::require_compatible(profile, center);
  require_level(center.size(), r);
  const auto order = detail::order_classes(profile, center);

  LevelVerdict verdict;
  verdict.level = r;
  // Condition (1) fails iff min over admissible pairs of
  // mu(smallest picks of left) - mu(largest picks of right) is negative.
  const auto worst = detail::extreme_pair(order, r, /*minimize=*/true, /*require_difference=*/false);
  verdict.respects_closeness = !worst || worst->value >= 0;
  if (!verdict.respects_closeness) {
    verdict.violation = detail::realize(profile, order, worst->vectors, /*left_low=*/true);
  }
  // Condition (2) holds iff some pair with differing vectors (strict
  // closeness) can have mu(left) > mu(right).
  const auto best = detail::extreme_pair(order, r, /*minimize=*/false, /*require_difference=*/true);
  verdict.has_strict_agreement = best && best->value > 0;
  if (verdict.has_strict_agreement) {
    verdict.strict_example = detail::realize(profile, order, best->vectors, /*left_low=*/false);
  }
  verdict.holds = verdict.respects_closeness && verdict.has_strict_agreement;
  return verdict;
}

/// Level 1 holds iff counts never increase with distance from the center
/// (hence are constant on each distance class) and are not constant overall.
inline bool level1_characterization(const Profile& profile, const PreferenceRelation& center) {
  detail::require_compatible(profile, center);
  const auto all = enumerate_relations(center.size());
  const auto classes = static_cast<std::size_t>(max_distance(center.size()) + 1);
  std::vector<std::uint64_t> lo(classes, UINT64_MAX);
  std::vector<std::uint64_t> hi(classes, 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto d = static_cast<std::size_t>(inversion_distance(all[i], center));
    lo[d] = std::min(lo[d], profile.count_at(i));
    hi[d] = std::max(hi[d], profile.count_at(i));
  }
  for (std::size_t d = 0; d < classes; ++d) {
    if (lo[d] != hi[d]) return false;
    if (d > 0 && lo[d - 1] < hi[d]) return false;
  }
  return hi.front() != lo.back();
}

enum class Checker { fast, bruteforce };

inline LevelVerdict exhibits_level_r(const Profile& profile, const PreferenceRelation& center,
                                     std::uint64_t r, Checker checker = Checker::fast) {
  return checker == Checker::fast ? exhibits_level_r_fast(profile, center, r)
                                  : exhibits_level_r_bruteforce(profile, center, r);
}

struct SpectrumOptions {
  /// Evaluate level 1 once and copy it across the collapse range instead of
  /// evaluating every level independently.
  bool collapse_shortcut = false;
  Checker checker = Checker::fast;
  /// Levels are split across this many concurrent workers.
  unsigned workers = 1;
};

struct ConsensusReport {
  PreferenceRelation center;
  /// levels[r - 1] is the verdict at level r.
  std::vector<LevelVerdict> levels;
  std::optional<std::uint64_t> min_level;
  std::uint64_t collapse_range_end = 0;

  [[nodiscard]] bool verdict(std::uint64_t r) const { return levels.at(r - 1).holds; }
};

/// Verdicts for every level 1..K!/2.
inline ConsensusReport consensus_spectrum(const Profile& profile, const PreferenceRelation& center,
                                          const SpectrumOptions& options = {}) {
  detail::require_compatible(profile, center);
  const int k = center.size();
  const std::uint64_t top = max_level(k);
  ConsensusReport report{center, std::vector<LevelVerdict>(top), std::nullopt, collapse_range_end(k)};

  std::vector<std::uint64_t> pending;
  if (options.collapse_shortcut) {
    report.levels[0] = exhibits_level_r(profile, center, 1, options.checker);
    for (std::uint64_t r = 2; r <= report.collapse_range_end; ++r) {
      LevelVerdict copied;
      copied.level = r;
      copied.holds = report.levels[0].holds;
      copied.respects_closeness = report.levels[0].respects_closeness;
      copied.has_strict_agreement = report.levels[0].has_strict_agreement;
      copied.evaluated = false;
      report.levels[r - 1] = std::move(copied);
    }
    for (std::uint64_t r = std::max<std::uint64_t>(2, report.collapse_range_end + 1); r <= top; ++r) {
      pending.push_back(r);
    }
  } else {
    for (std::uint64_t r = 1; r <= top; ++r) pending.push_back(r);
  }

  const unsigned workers = std::max(1U, options.workers);
  if (workers == 1 || pending.size() < 2) {
    for (const auto r : pending) report.levels[r - 1] = exhibits_level_r(profile, center, r, options.checker);
  } else {
    // Worker w handles pending[w], pending[w + workers], ...; each writes only its own slots.
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < pending.size(); i += workers) {
          const auto r = pending[i];
          report.levels[r - 1] = exhibits_level_r(profile, center, r, options.checker);
        }
      }));
    }
    for (auto& job : jobs) job.get();
  }

  for (const auto& level : report.levels) {
    if (level.holds) {
      report.min_level = level.level;
      break;
    }
  }
  return report;
}

}  // namespace consensus_lab
