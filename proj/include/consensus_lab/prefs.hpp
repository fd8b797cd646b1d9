#pragma once

// Linear orders over K alternatives, the inversion (Kendall tau) metric,
// distance classes around a center, and count-based profiles.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "consensus_lab/detail/checked.hpp"
#include "consensus_lab/error.hpp"

namespace consensus_lab {

inline constexpr int kMinAlternatives = 3;
/// Largest K for which the full set of K! relations is materialized.
inline constexpr int kMaxEnumerableAlternatives = 9;

/// An alternative label in 1..K.
struct Alternative {
  int id = 0;

  friend constexpr auto operator<=>(const Alternative&, const Alternative&) = default;
};

/// K(K-1)/2, the largest possible inversion distance.
constexpr int max_distance(int alternatives) { return alternatives * (alternatives - 1) / 2; }

inline void require_alternatives(int alternatives, int upper = kMaxEnumerableAlternatives) {
  if (alternatives < kMinAlternatives) {
    throw DomainError("need K > 2 alternatives, got K = " + std::to_string(alternatives));
  }
  if (alternatives > upper) {
    throw DomainError("K = " + std::to_string(alternatives) + " exceeds the supported maximum " +
                      std::to_string(upper));
  }
}

/// A linear order stored as a ranking, most-preferred alternative first.
class PreferenceRelation {
 public:
  /// Validates that `ranking` is a permutation of 1..K with K > 2.
  static PreferenceRelation from_ranking(std::vector<int> ranking) {
    const int k = static_cast<int>(ranking.size());
    if (k < kMinAlternatives) {
      throw DomainError("a preference relation needs K > 2 alternatives, got " +
                        std::to_string(k));
    }
    std::vector<int> position(ranking.size(), -1);
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      const int a = ranking[i];
      if (a < 1 || a > k) {
        throw ContractError("alternative " + std::to_string(a) + " outside 1.." +
                            std::to_string(k));
      }
      if (position[a - 1] != -1) {
        throw ContractError("alternative " + std::to_string(a) + " ranked twice");
      }
      position[a - 1] = static_cast<int>(i);
    }
    return PreferenceRelation(std::move(ranking), std::move(position));
  }

  static PreferenceRelation identity(int alternatives) {
    require_alternatives(alternatives, 64);
    std::vector<int> ranking(static_cast<std::size_t>(alternatives));
    std::iota(ranking.begin(), ranking.end(), 1);
    return from_ranking(std::move(ranking));
  }

  /// Inverse of index(): the relation at lexicographic position `index` among all K!.
  static PreferenceRelation from_index(int alternatives, std::uint64_t index) {
    require_alternatives(alternatives, 20);
    const std::uint64_t total = detail::factorial(alternatives);
    if (index >= total) {
      throw ContractError("relation index " + std::to_string(index) + " out of range for K = " +
                          std::to_string(alternatives));
    }
    std::vector<int> pool(static_cast<std::size_t>(alternatives));
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> ranking;
    ranking.reserve(pool.size());
    for (int i = alternatives - 1; i >= 0; --i) {
      const std::uint64_t block = detail::factorial(i);
      const auto pick = static_cast<std::size_t>(index / block);
      index %= block;
      ranking.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return from_ranking(std::move(ranking));
  }

  [[nodiscard]] int size() const noexcept { return static_cast<int>(ranking_.size()); }
  [[nodiscard]] std::span<const int> ranking() const noexcept { return ranking_; }
  [[nodiscard]] Alternative top() const noexcept { return {ranking_.front()}; }
  [[nodiscard]] Alternative at(std::size_t rank) const { return {ranking_.at(rank)}; }

  /// 0-based rank of `a` (0 = most preferred).
  [[nodiscard]] int position(Alternative a) const { return position_.at(a.id - 1); }

  [[nodiscard]] bool prefers(Alternative a, Alternative b) const {
    return position(a) < position(b);
  }

  /// The relation as a set of ordered pairs (a, b) meaning a is preferred to b.
  [[nodiscard]] std::vector<std::pair<int, int>> pair_set() const {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(max_distance(size())));
    for (std::size_t i = 0; i < ranking_.size(); ++i) {
      for (std::size_t j = i + 1; j < ranking_.size(); ++j) {
        pairs.emplace_back(ranking_[i], ranking_[j]);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
  }

  /// Lexicographic rank among all K! relations (Lehmer code).
  [[nodiscard]] std::uint64_t index() const {
    std::uint64_t out = 0;
    const int k = size();
    for (int i = 0; i < k; ++i) {
      std::uint64_t smaller_after = 0;
      for (int j = i + 1; j < k; ++j) {
        if (ranking_[j] < ranking_[i]) ++smaller_after;
      }
      out += smaller_after * detail::factorial(k - 1 - i);
    }
    return out;
  }

  friend bool operator==(const PreferenceRelation& a, const PreferenceRelation& b) {
    return a.ranking_ == b.ranking_;
  }
  friend std::strong_ordering operator<=>(const PreferenceRelation& a,
                                          const PreferenceRelation& b) {
    return a.ranking_ <=> b.ranking_;
  }

 private:
  PreferenceRelation(std::vector<int> ranking, std::vector<int> position)
      : ranking_(std::move(ranking)), position_(std::move(position)) {}

  std::vector<int> ranking_;
  std::vector<int> position_;
};

using RelationSet = std::vector<PreferenceRelation>;

inline void require_same_size(const PreferenceRelation& p, const PreferenceRelation& q) {
  if (p.size() != q.size()) {
    throw DimensionError("relations over different K: " + std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()));
  }
}

/// Number of unordered pairs of alternatives on which p and q disagree.
inline int inversion_distance(const PreferenceRelation& p, const PreferenceRelation& q) {
  require_same_size(p, q);
  const auto rank = p.ranking();
  int disagreements = 0;
  for (std::size_t i = 0; i < rank.size(); ++i) {
    const int qi = q.position({rank[i]});
    for (std::size_t j = i + 1; j < rank.size(); ++j) {
      if (qi > q.position({rank[j]})) ++disagreements;
    }
  }
  return disagreements;
}

inline PreferenceRelation reversal(const PreferenceRelation& p) {
  std::vector<int> ranking(p.ranking().rbegin(), p.ranking().rend());
  return PreferenceRelation::from_ranking(std::move(ranking));
}

/// Relabels alternatives: alternative a becomes relabel[a - 1].
inline PreferenceRelation relabel(const PreferenceRelation& p, const PreferenceRelation& mapping) {
  require_same_size(p, mapping);
  std::vector<int> ranking;
  ranking.reserve(static_cast<std::size_t>(p.size()));
  for (const int a : p.ranking()) ranking.push_back(mapping.ranking()[a - 1]);
  return PreferenceRelation::from_ranking(std::move(ranking));
}

/// All K! relations in lexicographic order of their rankings.
inline RelationSet enumerate_relations(int alternatives) {
  require_alternatives(alternatives);
  std::vector<int> ranking(static_cast<std::size_t>(alternatives));
  std::iota(ranking.begin(), ranking.end(), 1);
  RelationSet out;
  out.reserve(detail::factorial(alternatives));
  do {
    out.push_back(PreferenceRelation::from_ranking(ranking));
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return out;
}

/// Relations grouped by inversion distance from a center.
struct DistanceTable {
  PreferenceRelation center;
  /// classes[k] lists, in lexicographic order, every relation at distance k.
  std::vector<RelationSet> classes;
};

inline DistanceTable distance_classes(const PreferenceRelation& center) {
  DistanceTable table{center, std::vector<RelationSet>(
                                  static_cast<std::size_t>(max_distance(center.size()) + 1))};
  for (auto& relation : enumerate_relations(center.size())) {
    const auto k = static_cast<std::size_t>(inversion_distance(relation, center));
    table.classes[k].push_back(std::move(relation));
  }
  return table;
}

/// A multiset of preference relations, kept as counts indexed by the
/// lexicographic index of each relation. Voter order is not represented.
class Profile {
 public:
  Profile(int alternatives, std::vector<std::uint64_t> counts)
      : alternatives_(alternatives), counts_(std::move(counts)) {
    require_alternatives(alternatives_);
    if (counts_.size() != detail::factorial(alternatives_)) {
      throw DimensionError("profile count vector has " + std::to_string(counts_.size()) +
                           " entries, expected K! = " +
                           std::to_string(detail::factorial(alternatives_)));
    }
    for (const auto c : counts_) total_ = detail::checked_add(total_, c);
    if (total_ == 0) throw ContractError("a profile needs at least one individual (n >= 1)");
  }

  static Profile from_relations(int alternatives,
                                const std::vector<std::pair<PreferenceRelation, std::uint64_t>>& entries) {
    require_alternatives(alternatives);
    std::vector<std::uint64_t> counts(detail::factorial(alternatives), 0);
    for (const auto& [relation, count] : entries) {
      if (relation.size() != alternatives) {
        throw DimensionError("profile entry over K = " + std::to_string(relation.size()) +
                             ", expected K = " + std::to_string(alternatives));
      }
      auto& slot = counts[relation.index()];
      slot = detail::checked_add(slot, count);
    }
    return Profile(alternatives, std::move(counts));
  }

  [[nodiscard]] int alternatives() const noexcept { return alternatives_; }
  [[nodiscard]] std::uint64_t total() const noexcept { return total_; }
  [[nodiscard]] std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  [[nodiscard]] std::uint64_t count_at(std::size_t index) const { return counts_.at(index); }

  [[nodiscard]] std::uint64_t count(const PreferenceRelation& relation) const {
    if (relation.size() != alternatives_) {
      throw DimensionError("relation over K = " + std::to_string(relation.size()) +
                           " queried on a K = " + std::to_string(alternatives_) + " profile");
    }
    return counts_[relation.index()];
  }

  /// Relations held by at least one individual, in lexicographic order.
  [[nodiscard]] std::vector<std::pair<PreferenceRelation, std::uint64_t>> support() const {
    std::vector<std::pair<PreferenceRelation, std::uint64_t>> out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] > 0) out.emplace_back(PreferenceRelation::from_index(alternatives_, i), counts_[i]);
    }
    return out;
  }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  int alternatives_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Number of individuals whose relation lies in `members`.
inline std::uint64_t count_set(const Profile& profile, std::span<const PreferenceRelation> members) {
  std::uint64_t sum = 0;
  for (const auto& relation : members) sum = detail::checked_add(sum, profile.count(relation));
  return sum;
}

/// Single-token names for alternatives 1..K; defaults to a, b, c, ...
class AlternativeNames {
 public:
  explicit AlternativeNames(int alternatives) {
    if (alternatives < kMinAlternatives || alternatives > 26) {
      throw DomainError("default names exist for 3 <= K <= 26, got K = " +
                        std::to_string(alternatives));
    }
    for (int i = 0; i < alternatives; ++i) names_.emplace_back(1, static_cast<char>('a' + i));
  }

  explicit AlternativeNames(std::vector<std::string> names) : names_(std::move(names)) {
    if (static_cast<int>(names_.size()) < kMinAlternatives) {
      throw DomainError("need at least 3 alternative names");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty() ||
          names_[i].find_first_of(" \t\r\n>:#,") != std::string::npos) {
        throw ParseError("invalid alternative name '" + names_[i] + "'", i);
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[j] == names_[i]) throw ParseError("duplicate alternative name '" + names_[i] + "'", i);
      }
    }
  }

  [[nodiscard]] int size() const noexcept { return static_cast<int>(names_.size()); }
  [[nodiscard]] const std::string& name(Alternative a) const { return names_.at(a.id - 1); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

  [[nodiscard]] std::optional<Alternative> find(std::string_view token) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == token) return Alternative{static_cast<int>(i) + 1};
    }
    return std::nullopt;
  }

  /// Parses "x1 > x2 > ... > xK"; whitespace around tokens is ignored.
  [[nodiscard]] PreferenceRelation parse(std::string_view text) const {
    std::vector<int> ranking;
    std::vector<bool> seen(names_.size(), false);
    std::size_t start = 0;
    while (true) {
      const std::size_t end = std::min(text.find('>', start), text.size());
      std::size_t lo = start;
      std::size_t hi = end;
      while (lo < hi && is_space(text[lo])) ++lo;
      while (hi > lo && is_space(text[hi - 1])) --hi;
      const std::string_view token = text.substr(lo, hi - lo);
      if (token.empty()) throw ParseError("empty alternative at position " + std::to_string(lo), lo);
      for (std::size_t i = 0; i < token.size(); ++i) {
        if (is_space(token[i])) {
          throw ParseError("whitespace inside alternative name at position " +
                               std::to_string(lo + i), lo + i);
        }
      }
      const auto alt = find(token);
      if (!alt) {
        throw ParseError("unknown alternative '" + std::string(token) + "' at position " +
                             std::to_string(lo), lo);
      }
      if (seen[alt->id - 1]) {
        throw ParseError("duplicate alternative '" + std::string(token) + "' at position " +
                             std::to_string(lo), lo);
      }
      seen[alt->id - 1] = true;
      ranking.push_back(alt->id);
      if (end == text.size()) break;
      start = end + 1;
    }
    if (ranking.size() != names_.size()) {
      throw ParseError("relation ranks " + std::to_string(ranking.size()) + " of " +
                           std::to_string(names_.size()) + " alternatives",
                       text.size());
    }
    return PreferenceRelation::from_ranking(std::move(ranking));
  }

  [[nodiscard]] std::string render(const PreferenceRelation& relation) const {
    if (relation.size() != size()) {
      throw DimensionError("cannot render a K = " + std::to_string(relation.size()) +
                           " relation with " + std::to_string(size()) + " names");
    }
    std::string out;
    for (const int a : relation.ranking()) {
      if (!out.empty()) out += '>';
      out += names_[a - 1];
    }
    return out;
  }

  friend bool operator==(const AlternativeNames&, const AlternativeNames&) = default;

 private:
  static constexpr bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

  std::vector<std::string> names_;
};

/// Number of '>'-separated tokens in relation text.
inline int count_relation_tokens(std::string_view text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '>')) + 1;
}

/// Parses relation text over K alternatives named a, b, c, ...
inline PreferenceRelation parse_relation(std::string_view text, int alternatives) {
  return AlternativeNames(alternatives).parse(text);
}

/// As above, with K taken from the number of tokens.
inline PreferenceRelation parse_relation(std::string_view text) {
  const int k = count_relation_tokens(text);
  if (k < kMinAlternatives) {
    throw ParseError("relation text names fewer than 3 alternatives", 0);
  }
  return parse_relation(text, k);
}

inline std::string render_relation(const PreferenceRelation& relation) {
  return AlternativeNames(relation.size()).render(relation);
}

}  // namespace consensus_lab
