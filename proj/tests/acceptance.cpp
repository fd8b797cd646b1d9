// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every runtime bound is pinned here and measured as wall
// clock around the whole criterion.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "consensus_lab/consensus_lab.hpp"
#include "oracles.hpp"

using namespace consensus_lab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

constexpr std::uint64_t kSeed = 42;
constexpr std::uint64_t kScoreSeed = 7;
constexpr std::size_t kSampledClosenessPairs = 10'000;

int failures = 0;

void criterion(const char* id, const char* title, std::chrono::seconds bound, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = secs < static_cast<double>(bound.count());
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %-5s %s (%.2fs, bound %llds)%s%s\n", pass ? "PASS" : "FAIL", id, title, secs,
              static_cast<long long>(bound.count()), out.note.empty() ? "" : " - ", out.note.c_str());
  if (!in_time) std::printf("       runtime bound exceeded\n");
  std::fflush(stdout);
}

std::vector<int> as_ints(const PreferenceRelation& r) { return {r.ranking().begin(), r.ranking().end()}; }

int oracle_distance(const PreferenceRelation& p, const PreferenceRelation& center) {
  return oracles::pair_set_distance(as_ints(p), as_ints(center));
}

/// Definition-level closeness: search every injection left -> right.
bool injection_exists(const RelationSet& left, const RelationSet& right, const PreferenceRelation& center,
                      bool strict) {
  std::vector<int> a;
  std::vector<int> b;
  for (const auto& x : left) a.push_back(oracle_distance(x, center));
  for (const auto& y : right) b.push_back(oracle_distance(y, center));
  std::vector<std::size_t> perm(b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    bool fits = true;
    bool strict_slot = false;
    for (std::size_t i = 0; i < a.size() && fits; ++i) {
      fits = a[i] <= b[perm[i]];
      strict_slot = strict_slot || a[i] < b[perm[i]];
    }
    if (fits && (!strict || strict_slot)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::string count_note(const char* label, std::uint64_t n) { return std::string(label) + "=" + std::to_string(n); }

std::uint64_t count_kind(const harness::CampaignReport& r, const std::string& kind) {
  std::uint64_t n = 0;
  for (const auto& v : r.violations) n += v.kind == kind ? 1 : 0;
  return n;
}

}  // namespace

int main() {
  using std::chrono::seconds;

  criterion("AC1", "Mahonian rows match enumeration, sum K!, symmetric (K=3..8)", seconds(10), [] {
    for (int k = 3; k <= 8; ++k) {
      const auto row = mahonian_table(k).row;
      if (row != oracles::mahonian_by_enumeration(k)) return Outcome{false, "row mismatch at K=" + std::to_string(k)};
      std::uint64_t sum = 0;
      for (const auto x : row) sum += x;
      if (sum != detail::factorial(k)) return Outcome{false, "sum mismatch at K=" + std::to_string(k)};
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] != row[row.size() - 1 - i]) return Outcome{false, "asymmetric row at K=" + std::to_string(k)};
      }
    }
    return Outcome{};
  });

  criterion("AC2", "margin c(3)=1, c(4)=3, c <= K(K-1)/4 for K=3..12", seconds(1), [] {
    auto margin_from_row = [](const std::vector<std::uint64_t>& row) {
      std::uint64_t odd = 0;
      for (const auto x : row) odd += x % 2;
      return odd / 2;
    };
    if (collapse_margin(3) != 1 || margin_from_row(oracles::mahonian_by_enumeration(3)) != 1) {
      return Outcome{false, "c(3) != 1"};
    }
    if (collapse_margin(4) != 3 || margin_from_row(mahonian_table(4).row) != 3) return Outcome{false, "c(4) != 3"};
    for (int k = 3; k <= 12; ++k) {
      const auto t = mahonian_table(k);
      if (t.odd_count % 2 != 0 || static_cast<std::uint64_t>(t.margin) != margin_from_row(t.row)) return Outcome{false, "inconsistent margin"};
      if (4 * t.margin > k * (k - 1)) {
        return Outcome{false, "bound fails at K=" + std::to_string(k)};
      }
    }
    return Outcome{};
  });

  criterion("AC3", "(K-1)! <= K!/2 - c for K=3..8", seconds(1), [] {
    for (int k = 3; k <= 8; ++k) {
      const std::uint64_t lhs = detail::factorial(k - 1);
      const std::uint64_t rhs = detail::factorial(k) / 2 - collapse_margin(k);
      if (lhs > rhs || !factorial_within_collapse_range(k)) return Outcome{false, "fails at K=" + std::to_string(k)};
    }
    return Outcome{};
  });

  criterion("AC4", "closeness dominance == injection oracle (K=3 all, K=4 sampled)", seconds(120), [] {
    std::uint64_t checked = 0;
    std::uint64_t disagreements = 0;
    auto compare = [&](const RelationSet& l, const RelationSet& r, const PreferenceRelation& c) {
      ++checked;
      disagreements += at_least_as_close(l, r, c).has_value() != injection_exists(l, r, c, false) ? 1 : 0;
      disagreements += closer_than(l, r, c).has_value() != injection_exists(l, r, c, true) ? 1 : 0;
    };
    const auto all3 = enumerate_relations(3);
    for (const auto& center : all3) {
      for (unsigned a = 1; a < 64; ++a) {
        for (unsigned b = 1; b < 64; ++b) {
          if ((a & b) != 0 || __builtin_popcount(a) != __builtin_popcount(b) || __builtin_popcount(a) > 3) continue;
          RelationSet l;
          RelationSet r;
          for (unsigned i = 0; i < 6; ++i) {
            if (a & (1U << i)) l.push_back(all3[i]);
            if (b & (1U << i)) r.push_back(all3[i]);
          }
          compare(l, r, center);
        }
      }
    }
    const std::uint64_t exhaustive = checked;
    const auto all4 = enumerate_relations(4);
    detail::Rng rng(kSeed);
    for (std::size_t t = 0; t < kSampledClosenessPairs; ++t) {
      const auto center = all4[rng.below(all4.size())];
      const std::size_t size = 1 + rng.below(4);
      std::vector<std::size_t> pool(all4.size());
      for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
      for (std::size_t i = 0; i < 2 * size; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
      RelationSet l;
      RelationSet r;
      for (std::size_t i = 0; i < size; ++i) {
        l.push_back(all4[pool[i]]);
        r.push_back(all4[pool[size + i]]);
      }
      compare(l, r, center);
    }
    return Outcome{disagreements == 0, count_note("k3_pairs", exhaustive) + " " +
                                           count_note("k4_pairs", checked - exhaustive) + " " +
                                           count_note("disagreements", disagreements)};
  });

  criterion("AC5", "fast checker == brute force (K=3, n<=5, r=1..3, all centers)", seconds(600), [] {
    std::uint64_t checks = 0;
    std::uint64_t disagreements = 0;
    for (const auto& p : harness::all_profiles(3, 1, 5)) {
      for (const auto& center : enumerate_relations(3)) {
        for (std::uint64_t r = 1; r <= 3; ++r) {
          ++checks;
          const auto slow = exhibits_level_r_bruteforce(p, center, r);
          const auto fast = exhibits_level_r_fast(p, center, r);
          if (slow.holds != fast.holds || slow.respects_closeness != fast.respects_closeness ||
              slow.has_strict_agreement != fast.has_strict_agreement) {
            ++disagreements;
          }
          if (fast.violation) {
            const auto& w = *fast.violation;
            if (!at_least_as_close(w.left, w.right, center) || count_set(p, w.left) >= count_set(p, w.right)) {
              ++disagreements;
            }
          }
        }
      }
    }
    return Outcome{disagreements == 0, count_note("checks", checks) + " " + count_note("disagreements", disagreements)};
  });

  harness::CampaignReport exhaustive;
  criterion("AC6", "collapse: exhaustive K=3 n<=6 and sampled K=4 n=20 x1000", seconds(900), [&] {
    exhaustive = harness::verify_collapse_exhaustive(3, 6);
    const auto sampled = harness::verify_collapse_sampled(4, 20, 1000, kSeed);
    const auto a = count_kind(exhaustive, "collapse");
    const auto b = sampled.violations.size();
    return Outcome{a == 0 && b == 0 && exhaustive.profiles_examined == 923 && sampled.profiles_examined == 1000,
                   count_note("k3_profiles", exhaustive.profiles_examined) + " " + count_note("k3_violations", a) +
                       " " + count_note("k4_samples", sampled.profiles_examined) + " " +
                       count_note("k4_level1", sampled.counters.count("level1_consensus")
                                                   ? sampled.counters.at("level1_consensus")
                                                   : 0) +
                       " " + count_note("k4_violations", b)};
  });

  criterion("AC7", "monotonicity verdict(r) => verdict(r+1) over the K=3 sweep", seconds(900), [&] {
    if (exhaustive.profiles_examined == 0) return Outcome{false, "exhaustive sweep did not run"};
    const auto n = count_kind(exhaustive, "monotonicity");
    return Outcome{n == 0, count_note("violations", n)};
  });

  criterion("AC8", "balanced pair construction, all ordered (r1, r2) at K=3 and K=4", seconds(60), [] {
    std::uint64_t built = 0;
    std::uint64_t failures_here = 0;
    for (const int k : {3, 4}) {
      const auto all = enumerate_relations(k);
      const auto m = collapse_range_end(k);
      for (const auto& center : all) {
        const auto far = reversal(center);
        for (const auto& r1 : all) {
          for (const auto& r2 : all) {
            if (r1 == r2 || r1 == center || r1 == far || r2 == center || r2 == far) continue;
            ++built;
            const auto pair = construct_balanced_pair(center, r1, r2);
            const bool members = std::find(pair.left.begin(), pair.left.end(), r1) != pair.left.end() &&
                                 std::find(pair.right.begin(), pair.right.end(), r2) != pair.right.end();
            bool ok = is_balanced(pair) && pair.m == m && members;
            if (ok) {
              const auto phi = distance_preserving_bijection(pair);
              for (const auto& [x, y] : phi) ok = ok && oracle_distance(x, center) == oracle_distance(y, center);
              ok = ok && phi.size() == m && at_least_as_close(pair.left, pair.right, center) &&
                   at_least_as_close(pair.right, pair.left, center);
            }
            failures_here += ok ? 0 : 1;
          }
        }
      }
    }
    return Outcome{failures_here == 0, count_note("pairs", built) + " " + count_note("failures", failures_here)};
  });

  criterion("AC9", "scoring winners contain the center's top (K=3 n<=6, K=4 n<=12)", seconds(600), [] {
    const auto k3 = harness::verify_scoring_theorem(3, 6, 20, kScoreSeed);
    const auto k4 = harness::verify_scoring_theorem(4, 12, 20, kScoreSeed);
    auto consensus = [](const harness::CampaignReport& r) {
      return r.counters.count("consensus_profiles") ? r.counters.at("consensus_profiles") : 0;
    };
    return Outcome{k3.ok() && k4.ok() && consensus(k3) > 0 && consensus(k4) > 0,
                   count_note("k3_consensus", consensus(k3)) + " " + count_note("k4_consensus", consensus(k4)) + " " +
                       count_note("violations", k3.violations.size() + k4.violations.size())};
  });

  criterion("AC10", "majority equals center (odd n) and weak Condorcet winner (K=3, n<=5)", seconds(600), [] {
    const auto r = harness::verify_majority_and_condorcet(3, 5);
    return Outcome{r.ok(), count_note("examined", r.profiles_examined) + " " +
                               count_note("violations", r.violations.size())};
  });

  criterion("AC11", "gap exploration K=3 n<=5, witnesses re-validated by brute force", seconds(600), [] {
    const auto r = harness::find_gap_witness(3, 5);
    std::uint64_t bad = 0;
    for (const auto& w : r.witnesses) {
      const bool high = exhibits_level_r_bruteforce(w.profile, w.center, 3).holds;
      const bool low = exhibits_level_r_bruteforce(w.profile, w.center, 1).holds;
      bad += (high && !low && w.r == 3) ? 0 : 1;
    }
    return Outcome{bad == 0, count_note("witnesses", r.witnesses.size()) + " " + count_note("invalid", bad)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
