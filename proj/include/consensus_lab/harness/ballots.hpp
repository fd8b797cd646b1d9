#pragma once

// Ballot files: line-oriented "count: relation" entries.
//
//   # comment
//   alternatives: a b c      (optional; defaults to a, b, c, ... sized by the first entry)
//   3: a > b > c
//   2: b>a>c
//
// Repeated relations are summed.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "consensus_lab/detail/checked.hpp"
#include "consensus_lab/error.hpp"
#include "consensus_lab/prefs.hpp"

namespace consensus_lab::harness {

struct BallotFile {
  AlternativeNames names;
  Profile profile;
};

namespace internal {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] inline void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what, line);
}

}  // namespace internal

inline BallotFile parse_ballots(std::string_view text) {
  std::optional<AlternativeNames> names;
  std::vector<std::pair<std::size_t, std::uint64_t>> entries;  // (relation index, count)
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = internal::trim(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) internal::fail(line_no, "expected 'count: relation'");
    const auto head = internal::trim(line.substr(0, colon));
    const auto body = internal::trim(line.substr(colon + 1));

    if (head == "alternatives") {
      if (names) internal::fail(line_no, "alternatives declared twice or after the first entry");
      std::vector<std::string> declared;
      std::istringstream in{std::string(body)};
      for (std::string tok; in >> tok;) declared.push_back(tok);
      try {
        names.emplace(std::move(declared));
      } catch (const Error& e) {
        internal::fail(line_no, e.what());
      }
      continue;
    }

    if (head.empty() || head.size() > 18 ||
        head.find_first_not_of("0123456789") != std::string_view::npos) {
      internal::fail(line_no, "count '" + std::string(head) + "' is not a positive integer");
    }
    const std::uint64_t count = std::stoull(std::string(head));
    if (count == 0) internal::fail(line_no, "count must be positive");
    if (!names) {
      const int k = count_relation_tokens(body);
      if (k < kMinAlternatives || k > 26) {
        internal::fail(line_no, "cannot infer K from '" + std::string(body) + "'");
      }
      names.emplace(k);
    }
    try {
      const auto relation = names->parse(body);
      entries.emplace_back(relation.index(), count);
    } catch (const Error& e) {
      internal::fail(line_no, e.what());
    }
  }
  if (!names || entries.empty()) throw ParseError("ballot file has no entries", line_no);
  if (names->size() > kMaxEnumerableAlternatives) {
    throw DomainError("ballot files support K <= " + std::to_string(kMaxEnumerableAlternatives));
  }
  std::vector<std::uint64_t> counts(consensus_lab::detail::factorial(names->size()), 0);
  for (const auto& [index, count] : entries) {
    counts[index] = consensus_lab::detail::checked_add(counts[index], count);
  }
  return BallotFile{*names, Profile(names->size(), std::move(counts))};
}

inline BallotFile load_ballots(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open ballot file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ballots(buffer.str());
}

/// Canonical text: the alternatives line, then one entry per held relation
/// in lexicographic order.
inline std::string render_ballots(const Profile& profile, const AlternativeNames& names) {
  std::string out = "alternatives:";
  for (const auto& n : names.names()) out += " " + n;
  out += '\n';
  for (const auto& [relation, count] : profile.support()) {
    out += std::to_string(count) + ": " + names.render(relation) + '\n';
  }
  return out;
}

inline void save_ballots(const Profile& profile, const AlternativeNames& names, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write ballot file '" + path + "'");
  out << render_ballots(profile, names);
}

}  // namespace consensus_lab::harness
