#pragma once

// Scoring rules, the pairwise majority relation, and Condorcet winners.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "consensus_lab/detail/random.hpp"
#include "consensus_lab/error.hpp"
#include "consensus_lab/prefs.hpp"

namespace consensus_lab {

using Score = boost::rational<std::int64_t>;

/// Points per rank position: nonnegative, nonincreasing, first > last.
class ScoreVector {
 public:
  explicit ScoreVector(std::vector<Score> scores) : scores_(std::move(scores)) {
    if (scores_.size() < 2) throw ContractError("a score vector needs at least two entries");
    for (std::size_t i = 0; i < scores_.size(); ++i) {
      if (scores_[i] < 0) throw ContractError("score S" + std::to_string(i + 1) + " is negative");
      if (i > 0 && scores_[i] > scores_[i - 1]) {
        throw ContractError("scores must be nonincreasing, S" + std::to_string(i + 1) + " > S" +
                            std::to_string(i));
      }
    }
    if (!(scores_.front() > scores_.back())) throw ContractError("scores need S1 > SK");
  }

  static ScoreVector borda(int alternatives) {
    std::vector<Score> s;
    for (int i = alternatives - 1; i >= 0; --i) s.emplace_back(i);
    return ScoreVector(std::move(s));
  }

  static ScoreVector plurality(int alternatives) {
    std::vector<Score> s(static_cast<std::size_t>(alternatives), Score(0));
    s.front() = 1;
    return ScoreVector(std::move(s));
  }

  static ScoreVector antiplurality(int alternatives) {
    std::vector<Score> s(static_cast<std::size_t>(alternatives), Score(1));
    s.back() = 0;
    return ScoreVector(std::move(s));
  }

  /// Comma-separated entries, each an integer, "p/q", or a decimal like "0.25".
  static ScoreVector parse(std::string_view text) {
    std::vector<Score> s;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = std::min(text.find(',', start), text.size());
      s.push_back(parse_score(text.substr(start, end - start), start));
      start = end + 1;
    }
    return ScoreVector(std::move(s));
  }

  /// Seeded random vector of rationals p/q (p <= 20, q <= 10), sorted
  /// nonincreasing; draws with S1 == SK are rejected.
  static ScoreVector random(int alternatives, detail::Rng& rng) {
    while (true) {
      std::vector<Score> s;
      for (int i = 0; i < alternatives; ++i) s.emplace_back(rng.between(0, 20), rng.between(1, 10));
      std::sort(s.begin(), s.end(), [](const Score& a, const Score& b) { return a > b; });
      if (s.front() > s.back()) return ScoreVector(std::move(s));
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return scores_.size(); }
  [[nodiscard]] std::span<const Score> scores() const noexcept { return scores_; }
  [[nodiscard]] const Score& at(std::size_t rank) const { return scores_.at(rank); }

  /// alpha * S + beta, alpha > 0 and beta >= 0.
  [[nodiscard]] ScoreVector affine(const Score& alpha, const Score& beta) const {
    std::vector<Score> s;
    for (const auto& x : scores_) s.push_back(alpha * x + beta);
    return ScoreVector(std::move(s));
  }

 private:
  static Score parse_score(std::string_view token, std::size_t offset) {
    while (!token.empty() && token.front() == ' ') {
      token.remove_prefix(1);
      ++offset;
    }
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    auto digits = [&](std::string_view part) -> std::int64_t {
      if (part.empty() || part.size() > 12 ||
          !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("malformed score '" + std::string(token) + "'", offset);
      }
      return std::stoll(std::string(part));
    };
    if (const auto slash = token.find('/'); slash != std::string_view::npos) {
      const auto den = digits(token.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in score '" + std::string(token) + "'", offset);
      return {digits(token.substr(0, slash)), den};
    }
    if (const auto dot = token.find('.'); dot != std::string_view::npos) {
      const auto frac = token.substr(dot + 1);
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const auto whole = dot == 0 ? 0 : digits(token.substr(0, dot));
      return Score(whole) + Score(frac.empty() ? 0 : digits(frac), scale);
    }
    return {digits(token)};
  }

  std::vector<Score> scores_;
};

/// Total score of each alternative (index a - 1).
inline std::vector<Score> scoring_totals(const Profile& profile, const ScoreVector& scores) {
  const int k = profile.alternatives();
  if (static_cast<int>(scores.size()) != k) {
    throw ContractError("score vector has " + std::to_string(scores.size()) + " entries, profile has K = " +
                        std::to_string(k));
  }
  std::vector<Score> totals(static_cast<std::size_t>(k), Score(0));
  for (const auto& [relation, count] : profile.support()) {
    const auto weight = static_cast<std::int64_t>(count);
    for (std::size_t rank = 0; rank < relation.ranking().size(); ++rank) {
      totals[static_cast<std::size_t>(relation.ranking()[rank] - 1)] += scores.at(rank) * weight;
    }
  }
  return totals;
}

/// Alternatives with the maximum total score, in increasing id order.
inline std::vector<Alternative> scoring_winners(const Profile& profile, const ScoreVector& scores) {
  const auto totals = scoring_totals(profile, scores);
  const Score best = *std::max_element(totals.begin(), totals.end());
  std::vector<Alternative> winners;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    if (totals[i] == best) winners.push_back({static_cast<int>(i) + 1});
  }
  return winners;
}

/// Strict pairwise majority comparisons of a profile.
class MajorityRelation {
 public:
  explicit MajorityRelation(const Profile& profile)
      : alternatives_(profile.alternatives()),
        tallies_(static_cast<std::size_t>(alternatives_ * alternatives_), 0) {
    for (const auto& [relation, count] : profile.support()) {
      const auto r = relation.ranking();
      for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i + 1; j < r.size(); ++j) tallies_[slot(r[i], r[j])] += count;
      }
    }
  }

  [[nodiscard]] int alternatives() const noexcept { return alternatives_; }

  /// Individuals ranking a above b.
  [[nodiscard]] std::uint64_t tally(Alternative a, Alternative b) const { return tallies_.at(slot(a.id, b.id)); }

  [[nodiscard]] bool beats(Alternative a, Alternative b) const { return tally(a, b) > tally(b, a); }

  /// Ordered pairs (a, b) with a strictly beating b, in lexicographic order.
  [[nodiscard]] std::vector<std::pair<Alternative, Alternative>> pairs() const {
    std::vector<std::pair<Alternative, Alternative>> out;
    for (int a = 1; a <= alternatives_; ++a) {
      for (int b = 1; b <= alternatives_; ++b) {
        if (a != b && beats({a}, {b})) out.emplace_back(Alternative{a}, Alternative{b});
      }
    }
    return out;
  }

  /// Every pair of distinct alternatives is decided.
  [[nodiscard]] bool is_complete() const {
    for (int a = 1; a <= alternatives_; ++a) {
      for (int b = a + 1; b <= alternatives_; ++b) {
        if (!beats({a}, {b}) && !beats({b}, {a})) return false;
      }
    }
    return true;
  }

  [[nodiscard]] bool is_transitive() const {
    for (int a = 1; a <= alternatives_; ++a) {
      for (int b = 1; b <= alternatives_; ++b) {
        for (int c = 1; c <= alternatives_; ++c) {
          if (beats({a}, {b}) && beats({b}, {c}) && !beats({a}, {c})) return false;
        }
      }
    }
    return true;
  }

  /// The majority relation is exactly the linear order `relation`.
  [[nodiscard]] bool equals(const PreferenceRelation& relation) const {
    if (relation.size() != alternatives_) return false;
    for (int a = 1; a <= alternatives_; ++a) {
      for (int b = 1; b <= alternatives_; ++b) {
        if (a != b && beats({a}, {b}) != relation.prefers({a}, {b})) return false;
      }
    }
    return true;
  }

 private:
  [[nodiscard]] std::size_t slot(int a, int b) const {
    return static_cast<std::size_t>((a - 1) * alternatives_ + (b - 1));
  }

  int alternatives_;
  std::vector<std::uint64_t> tallies_;
};

inline MajorityRelation majority_relation(const Profile& profile) { return MajorityRelation(profile); }

enum class CondorcetMode { strict, weak };

struct CondorcetResult {
  Alternative winner;
  /// Weak mode only: more than one alternative qualified; the smallest id is reported.
  bool tie_broken = false;
};

/// Strict: beats every other alternative. Weak: loses to none.
inline std::optional<CondorcetResult> condorcet_winner(const Profile& profile, CondorcetMode mode) {
  const MajorityRelation majority(profile);
  const int k = profile.alternatives();
  std::vector<Alternative> qualified;
  for (int a = 1; a <= k; ++a) {
    bool ok = true;
    for (int b = 1; b <= k && ok; ++b) {
      if (a == b) continue;
      ok = mode == CondorcetMode::strict ? majority.beats({a}, {b}) : !majority.beats({b}, {a});
    }
    if (ok) qualified.push_back({a});
  }
  if (qualified.empty()) return std::nullopt;
  return CondorcetResult{qualified.front(), qualified.size() > 1};
}

}  // namespace consensus_lab
