#pragma once

// Verification campaigns. Each one sweeps a family of profiles, evaluates the
// consensus deciders and voting rules, and records every observed violation
// of the claim under test together with a reproducible profile, center and
// level.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "consensus_lab/consensus.hpp"
#include "consensus_lab/detail/random.hpp"
#include "consensus_lab/error.hpp"
#include "consensus_lab/harness/profiles.hpp"
#include "consensus_lab/mahonian.hpp"
#include "consensus_lab/prefs.hpp"
#include "consensus_lab/rules.hpp"

namespace consensus_lab::harness {

struct CampaignParameters {
  int alternatives = 0;
  /// Exhaustive campaigns: largest profile size. Sampled campaigns: the fixed size.
  std::uint64_t n_max = 0;
  /// Largest level whose verdict the campaign compares.
  std::uint64_t r_max = 0;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> score_samples;
  std::optional<std::uint64_t> seed;
  bool all_centers = false;
  std::string checker;
};

/// A profile/center/level triple with a short description; used both for
/// violations and for observational witnesses.
struct CampaignEntry {
  std::string kind;
  Profile profile;
  PreferenceRelation center;
  std::uint64_t r = 0;
  std::string detail;
};

struct CampaignReport {
  std::string campaign;
  CampaignParameters parameters;
  std::uint64_t profiles_examined = 0;
  std::map<std::string, std::uint64_t> counters;
  std::vector<CampaignEntry> violations;
  std::vector<CampaignEntry> witnesses;
  std::chrono::milliseconds duration{0};

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

struct CampaignOptions {
  /// Sweep every center instead of fixing the identity order.
  bool all_centers = false;
  Checker checker = Checker::bruteforce;
  unsigned workers = 1;
};

namespace internal {

struct Partial {
  std::uint64_t examined = 0;
  std::map<std::string, std::uint64_t> counters;
  std::vector<CampaignEntry> violations;
  std::vector<CampaignEntry> witnesses;
};

/// Runs work(i) for i in [0, count) on `workers` threads and merges the
/// partial results in index order, so output never depends on scheduling.
template <typename Work>
void run_indexed(CampaignReport& report, std::size_t count, unsigned workers, Work work) {
  std::vector<Partial> parts(count);
  const unsigned w = std::max(1U, workers);
  if (w == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) parts[i] = work(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < w; ++t) {
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < count; i += w) parts[i] = work(i);
      }));
    }
    for (auto& job : jobs) job.get();
  }
  for (auto& p : parts) {
    report.profiles_examined += p.examined;
    for (const auto& [name, value] : p.counters) report.counters[name] += value;
    for (auto& v : p.violations) report.violations.push_back(std::move(v));
    for (auto& v : p.witnesses) report.witnesses.push_back(std::move(v));
  }
}

inline std::vector<PreferenceRelation> centers_for(int alternatives, bool all_centers) {
  if (all_centers) return enumerate_relations(alternatives);
  return {PreferenceRelation::identity(alternatives)};
}

inline const char* checker_name(Checker c) { return c == Checker::fast ? "fast" : "bruteforce"; }

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void require_exhaustive_k(int alternatives, const char* campaign) {
  if (alternatives != 3) {
    throw CapacityError(std::string(campaign) + " is exhaustive and limited to K = 3, got K = " +
                        std::to_string(alternatives) + "; use the sampled campaign for larger K");
  }
}

}  // namespace internal

/// For every profile with n <= n_max and each center, evaluates every level
/// independently and checks verdict(r) == verdict(1) on the collapse range
/// and verdict(r) => verdict(r + 1) on all levels.
inline CampaignReport verify_collapse_exhaustive(int alternatives, std::uint64_t n_max,
                                                 const CampaignOptions& options = {}) {
  internal::require_exhaustive_k(alternatives, "verify_collapse_exhaustive");
  const internal::Stopwatch clock;
  const std::uint64_t top = max_level(alternatives);
  const std::uint64_t end = collapse_range_end(alternatives);
  CampaignReport report;
  report.campaign = "collapse-exhaustive";
  report.parameters = {alternatives, n_max, top, std::nullopt, std::nullopt, std::nullopt,
                       options.all_centers, internal::checker_name(options.checker)};

  const auto profiles = all_profiles(alternatives, 1, n_max);
  const auto centers = internal::centers_for(alternatives, options.all_centers);
  internal::run_indexed(report, profiles.size(), options.workers, [&](std::size_t i) {
    internal::Partial part;
    const Profile& profile = profiles[i];
    for (const auto& center : centers) {
      ++part.examined;
      std::vector<bool> verdict(top + 1, false);
      for (std::uint64_t r = 1; r <= top; ++r) {
        verdict[r] = exhibits_level_r(profile, center, r, options.checker).holds;
      }
      part.counters["level_evaluations"] += top;
      if (verdict[1]) ++part.counters["level1_consensus"];
      if (std::find(verdict.begin() + 1, verdict.end(), true) != verdict.end()) {
        ++part.counters["some_level_consensus"];
      }
      for (std::uint64_t r = 2; r <= end; ++r) {
        if (verdict[r] != verdict[1]) {
          part.violations.push_back({"collapse", profile, center, r,
                                     "verdict(" + std::to_string(r) + ") = " + (verdict[r] ? "true" : "false") +
                                         " but verdict(1) = " + (verdict[1] ? "true" : "false")});
        }
      }
      for (std::uint64_t r = 1; r < top; ++r) {
        if (verdict[r] && !verdict[r + 1]) {
          part.violations.push_back({"monotonicity", profile, center, r,
                                     "level " + std::to_string(r) + " holds but level " +
                                         std::to_string(r + 1) + " does not"});
        }
      }
    }
    return part;
  });
  report.duration = clock.elapsed();
  return report;
}

/// Seeded sample of profiles of size n over K in {4, 5}, cycling through
/// three families: uniform draws, distance-decay draws, and class-constant
/// monotone profiles (level-1 consensus by construction) with a one-voter
/// perturbation half of the time. For each profile, verdict(1) is compared
/// with verdict(r) at r = K!/2 - c and three further sampled levels of the
/// collapse range, all via the fast checker.
inline CampaignReport verify_collapse_sampled(int alternatives, std::uint64_t n, std::uint64_t samples,
                                              std::uint64_t seed, unsigned workers = 1) {
  if (alternatives != 4 && alternatives != 5) {
    throw DomainError("verify_collapse_sampled supports K in {4, 5}, got K = " + std::to_string(alternatives));
  }
  if (n == 0) throw ContractError("sampled profiles need n >= 1");
  const internal::Stopwatch clock;
  const std::uint64_t end = collapse_range_end(alternatives);
  const std::uint64_t relations = consensus_lab::detail::factorial(alternatives);
  CampaignReport report;
  report.campaign = "collapse-sampled";
  report.parameters = {alternatives, n, end, samples, std::nullopt, seed, true, "fast"};

  std::vector<ClassCounts> monotone;
  for (auto& c : monotone_class_counts(alternatives, n)) {
    if (c.total == n) monotone.push_back(std::move(c));
  }

  internal::run_indexed(report, static_cast<std::size_t>(samples), workers, [&](std::size_t i) {
    internal::Partial part;
    auto rng = consensus_lab::detail::Rng::stream(seed, i);
    const auto center = PreferenceRelation::from_index(alternatives, rng.below(relations));
    std::optional<Profile> profile;
    switch (i % 3) {
      case 0:
        profile = generate_profile(center, 1.0, n, rng.next());
        ++part.counters["family_uniform"];
        break;
      case 1: {
        const double theta = static_cast<double>(1 + rng.below(9)) / 10.0;
        profile = generate_profile(center, theta, n, rng.next());
        ++part.counters["family_decay"];
        break;
      }
      default: {
        profile = class_profile(center, monotone[rng.below(monotone.size())]);
        if (rng.below(2) == 1) {
          profile = perturb(*profile, rng);
          ++part.counters["family_class_perturbed"];
        } else {
          ++part.counters["family_class"];
        }
        break;
      }
    }
    ++part.examined;

    std::vector<std::uint64_t> levels{end};
    for (int j = 0; j < 3; ++j) levels.push_back(2 + rng.below(end - 1));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    const bool level1 = exhibits_level_r_fast(*profile, center, 1).holds;
    if (level1) ++part.counters["level1_consensus"];
    bool any = level1;
    for (const auto r : levels) {
      const bool v = exhibits_level_r_fast(*profile, center, r).holds;
      ++part.counters["level_evaluations"];
      any = any || v;
      if (v != level1) {
        part.violations.push_back({"collapse", *profile, center, r,
                                   "verdict(" + std::to_string(r) + ") = " + (v ? "true" : "false") +
                                       " but verdict(1) = " + (level1 ? "true" : "false")});
      }
    }
    if (any) ++part.counters["some_sampled_level_consensus"];
    return part;
  });
  report.duration = clock.elapsed();
  return report;
}

/// Observational: profiles with consensus at some level above the collapse
/// range but not at level 1.
inline CampaignReport find_gap_witness(int alternatives, std::uint64_t n_max, const CampaignOptions& options = {}) {
  internal::require_exhaustive_k(alternatives, "find_gap_witness");
  const internal::Stopwatch clock;
  const std::uint64_t top = max_level(alternatives);
  const std::uint64_t end = collapse_range_end(alternatives);
  CampaignReport report;
  report.campaign = "gap-witness";
  report.parameters = {alternatives, n_max, top, std::nullopt, std::nullopt, std::nullopt,
                       options.all_centers, internal::checker_name(options.checker)};

  const auto profiles = all_profiles(alternatives, 1, n_max);
  const auto centers = internal::centers_for(alternatives, options.all_centers);
  internal::run_indexed(report, profiles.size(), options.workers, [&](std::size_t i) {
    internal::Partial part;
    for (const auto& center : centers) {
      ++part.examined;
      const bool level1 = exhibits_level_r(profiles[i], center, 1, options.checker).holds;
      if (level1) continue;
      for (std::uint64_t r = end + 1; r <= top; ++r) {
        if (exhibits_level_r(profiles[i], center, r, options.checker).holds) {
          part.witnesses.push_back({"tail-consensus-without-level1", profiles[i], center, r,
                                    "level " + std::to_string(r) + " holds, level 1 does not"});
        }
      }
    }
    return part;
  });
  report.counters["witnesses"] = report.witnesses.size();
  report.duration = clock.elapsed();
  return report;
}

namespace internal {

inline std::vector<std::pair<std::string, ScoreVector>> scoring_rules(int alternatives, std::uint64_t random_count,
                                                                      std::uint64_t seed) {
  std::vector<std::pair<std::string, ScoreVector>> rules{
      {"borda", ScoreVector::borda(alternatives)},
      {"plurality", ScoreVector::plurality(alternatives)},
      {"antiplurality", ScoreVector::antiplurality(alternatives)},
  };
  consensus_lab::detail::Rng rng(seed);
  for (std::uint64_t i = 0; i < random_count; ++i) {
    rules.emplace_back("random-" + std::to_string(i + 1), ScoreVector::random(alternatives, rng));
  }
  return rules;
}

/// Scoring and level-characterization checks shared by the K = 3 and K = 4 variants.
/// `consensus` is the verdict at level (K-1)!.
inline void check_scoring(Partial& part, const Profile& profile, const PreferenceRelation& center,
                          bool consensus, const std::vector<std::pair<std::string, ScoreVector>>& rules) {
  const auto low_level = consensus_lab::detail::factorial(center.size() - 1);
  const bool level1 = level1_characterization(profile, center);
  if (level1 != consensus) {
    part.violations.push_back({"level-characterization", profile, center, low_level,
                               std::string("level ") + std::to_string(low_level) + " verdict " +
                                   (consensus ? "true" : "false") + " disagrees with level 1 verdict " +
                                   (level1 ? "true" : "false")});
  }
  if (!consensus) return;
  ++part.counters["consensus_profiles"];
  const Alternative top = center.top();
  for (const auto& [name, scores] : rules) {
    ++part.counters["rule_checks"];
    const auto winners = scoring_winners(profile, scores);
    if (std::find(winners.begin(), winners.end(), top) == winners.end()) {
      part.violations.push_back({"scoring", profile, center, low_level,
                                 "rule " + name + ": top alternative " + std::to_string(top.id) +
                                     " is not among the winners"});
    }
  }
}

}  // namespace internal

/// Over profiles with consensus of level (K-1)! around a center, the center's
/// top alternative must win under Borda, plurality, antiplurality and
/// `score_samples` seeded random score vectors. K = 3 sweeps every profile
/// with n <= n_max and every center; K = 4 sweeps every class-constant
/// monotone profile with n <= n_max around a seeded center, plus one seeded
/// one-voter perturbation of each. The level-(K-1)! verdict is also compared
/// against the level-1 characterization.
inline CampaignReport verify_scoring_theorem(int alternatives, std::uint64_t n_max, std::uint64_t score_samples,
                                             std::uint64_t seed, unsigned workers = 1) {
  const internal::Stopwatch clock;
  CampaignReport report;
  report.campaign = "scoring";
  const auto low_level = consensus_lab::detail::factorial(alternatives - 1);
  const auto rules = internal::scoring_rules(alternatives, score_samples, seed);

  if (alternatives == 3) {
    report.parameters = {alternatives, n_max, low_level, std::nullopt, score_samples, seed, true, "bruteforce"};
    const auto profiles = all_profiles(alternatives, 1, n_max);
    const auto centers = enumerate_relations(alternatives);
    internal::run_indexed(report, profiles.size(), workers, [&](std::size_t i) {
      internal::Partial part;
      for (const auto& center : centers) {
        ++part.examined;
        const bool consensus = exhibits_level_r_bruteforce(profiles[i], center, low_level).holds;
        internal::check_scoring(part, profiles[i], center, consensus, rules);
      }
      return part;
    });
  } else if (alternatives == 4) {
    report.parameters = {alternatives, n_max, low_level, std::nullopt, score_samples, seed, false, "fast"};
    consensus_lab::detail::Rng rng(seed ^ 0x5c0e5c0e5c0e5c0eULL);
    const auto center =
        PreferenceRelation::from_index(alternatives, rng.below(consensus_lab::detail::factorial(alternatives)));
    std::vector<Profile> profiles;
    for (const auto& counts : monotone_class_counts(alternatives, n_max)) {
      profiles.push_back(class_profile(center, counts));
      profiles.push_back(perturb(profiles.back(), rng));
    }
    internal::run_indexed(report, profiles.size(), workers, [&](std::size_t i) {
      internal::Partial part;
      ++part.examined;
      const bool consensus = exhibits_level_r_fast(profiles[i], center, low_level).holds;
      internal::check_scoring(part, profiles[i], center, consensus, rules);
      return part;
    });
  } else {
    throw DomainError("verify_scoring_theorem supports K = 3 (exhaustive) or K = 4 (sampled), got K = " +
                      std::to_string(alternatives));
  }
  report.duration = clock.elapsed();
  return report;
}

/// Over profiles with consensus of level K!/2 around a center: for odd n the
/// majority relation equals the center; for every n the center's top
/// alternative loses no pairwise majority comparison.
inline CampaignReport verify_majority_and_condorcet(int alternatives, std::uint64_t n_max, unsigned workers = 1) {
  internal::require_exhaustive_k(alternatives, "verify_majority_and_condorcet");
  const internal::Stopwatch clock;
  const std::uint64_t top_level = max_level(alternatives);
  CampaignReport report;
  report.campaign = "majority-condorcet";
  report.parameters = {alternatives, n_max, top_level, std::nullopt, std::nullopt, std::nullopt, true, "bruteforce"};

  const auto profiles = all_profiles(alternatives, 1, n_max);
  const auto centers = enumerate_relations(alternatives);
  internal::run_indexed(report, profiles.size(), workers, [&](std::size_t i) {
    internal::Partial part;
    const Profile& profile = profiles[i];
    const MajorityRelation majority(profile);
    for (const auto& center : centers) {
      ++part.examined;
      if (!exhibits_level_r_bruteforce(profile, center, top_level).holds) continue;
      ++part.counters["consensus_profiles"];
      if (profile.total() % 2 == 1) {
        ++part.counters["odd_n_consensus_profiles"];
        if (!majority.equals(center)) {
          part.violations.push_back({"majority", profile, center, top_level,
                                     "majority relation differs from the consensus relation"});
        }
      }
      const Alternative best = center.top();
      for (int b = 1; b <= alternatives; ++b) {
        if (b != best.id && majority.beats({b}, best)) {
          part.violations.push_back({"condorcet", profile, center, top_level,
                                     "top alternative " + std::to_string(best.id) + " loses to " +
                                         std::to_string(b)});
        }
      }
      const auto strict = condorcet_winner(profile, CondorcetMode::strict);
      if (!strict || strict->winner != best) ++part.counters["top_not_strict_condorcet_winner"];
    }
    return part;
  });
  report.duration = clock.elapsed();
  return report;
}

}  // namespace consensus_lab::harness
