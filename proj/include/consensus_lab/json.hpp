#pragma once

// JSON views of library results. Objects use insertion-ordered keys so the
// serialized text is stable for identical inputs.

#include <fstream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "consensus_lab/balanced.hpp"
#include "consensus_lab/closeness.hpp"
#include "consensus_lab/consensus.hpp"
#include "consensus_lab/harness/campaigns.hpp"
#include "consensus_lab/mahonian.hpp"
#include "consensus_lab/prefs.hpp"
#include "consensus_lab/rules.hpp"

namespace consensus_lab::json {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCampaignSchema = "consensus-lab/campaign-report/v1";
inline constexpr const char* kConsensusSchema = "consensus-lab/consensus-report/v1";

inline Json relation_set(const RelationSet& set, const AlternativeNames& names) {
  Json out = Json::array();
  for (const auto& r : set) out.push_back(names.render(r));
  return out;
}

inline Json profile(const Profile& p, const AlternativeNames& names) {
  Json entries = Json::array();
  for (const auto& [relation, count] : p.support()) {
    entries.push_back(Json{{"relation", names.render(relation)}, {"count", count}});
  }
  return Json{{"n", p.total()}, {"entries", std::move(entries)}};
}

inline Json mahonian(const MahonianTable& table) {
  const auto k = table.alternatives;
  const auto half = detail::factorial(k) / 2;
  return Json{{"k", k},
              {"row", table.row},
              {"sum", detail::factorial(k)},
              {"odd_count", table.odd_count},
              {"margin", table.margin},
              {"margin_bound", static_cast<double>(k * (k - 1)) / 4.0},
              {"margin_within_bound", 4 * table.margin <= k * (k - 1)},
              {"collapse_range_end", half - static_cast<std::uint64_t>(table.margin)},
              {"factorial_k_minus_1", detail::factorial(k - 1)},
              {"factorial_within_collapse_range", detail::factorial(k - 1) <= half - static_cast<std::uint64_t>(table.margin)}};
}

inline Json witness(const std::optional<ClosenessWitness>& w, const AlternativeNames& names) {
  if (!w) return nullptr;
  Json mapping = Json::array();
  for (const auto& [x, y] : w->mapping) mapping.push_back(Json{{"from", names.render(x)}, {"to", names.render(y)}});
  return Json{{"strict", w->strict}, {"mapping", std::move(mapping)}};
}

inline Json level_witness(const std::optional<LevelWitness>& w, const AlternativeNames& names) {
  if (!w) return nullptr;
  return Json{{"left", relation_set(w->left, names)},
              {"right", relation_set(w->right, names)},
              {"left_count", w->left_count},
              {"right_count", w->right_count}};
}

inline Json level_verdict(const LevelVerdict& v, const AlternativeNames& names) {
  return Json{{"r", v.level},
              {"holds", v.holds},
              {"evaluated", v.evaluated},
              {"respects_closeness", v.respects_closeness},
              {"has_strict_agreement", v.has_strict_agreement},
              {"violation", level_witness(v.violation, names)},
              {"strict_example", level_witness(v.strict_example, names)}};
}

inline Json consensus_report(const ConsensusReport& report, const AlternativeNames& names) {
  Json levels = Json::array();
  for (const auto& v : report.levels) levels.push_back(level_verdict(v, names));
  return Json{{"schema", kConsensusSchema},
              {"center", names.render(report.center)},
              {"collapse_range_end", report.collapse_range_end},
              {"min_level", report.min_level ? Json(*report.min_level) : Json(nullptr)},
              {"levels", std::move(levels)}};
}

inline Json balanced_pair(const BalancedPair& pair, const AlternativeNames& names) {
  Json phi = Json::array();
  const bool ok = is_balanced(pair);
  std::optional<ClosenessWitness> forward;
  std::optional<ClosenessWitness> backward;
  bool strict_either = false;
  if (ok) {
    for (const auto& [x, y] : distance_preserving_bijection(pair)) {
      phi.push_back(Json{{"from", names.render(x)}, {"to", names.render(y)}});
    }
    if (pair.m > 0) {
      forward = at_least_as_close(pair.left, pair.right, pair.center);
      backward = at_least_as_close(pair.right, pair.left, pair.center);
      strict_either = closer_than(pair.left, pair.right, pair.center).has_value() ||
                      closer_than(pair.right, pair.left, pair.center).has_value();
    }
  }
  return Json{{"center", names.render(pair.center)},
              {"m", pair.m},
              {"left", relation_set(pair.left, names)},
              {"right", relation_set(pair.right, names)},
              {"is_balanced", ok},
              {"bijection", std::move(phi)},
              {"left_at_least_as_close", forward.has_value()},
              {"right_at_least_as_close", backward.has_value()},
              {"strict_either_way", strict_either}};
}

inline Json score_vector(const ScoreVector& s) {
  Json out = Json::array();
  for (const auto& x : s.scores()) {
    out.push_back(x.denominator() == 1 ? std::to_string(x.numerator())
                                       : std::to_string(x.numerator()) + "/" + std::to_string(x.denominator()));
  }
  return out;
}

inline Json campaign_entry(const harness::CampaignEntry& e) {
  const AlternativeNames names(e.profile.alternatives());
  return Json{{"kind", e.kind},
              {"center", names.render(e.center)},
              {"r", e.r},
              {"detail", e.detail},
              {"profile", profile(e.profile, names)}};
}

/// `include_timing` adds the wall-clock duration, which makes the text vary
/// between otherwise identical runs.
inline Json campaign_report(const harness::CampaignReport& report, bool include_timing = false) {
  const auto& p = report.parameters;
  Json params{{"k", p.alternatives}, {"n_max", p.n_max}, {"r_max", p.r_max}};
  params["samples"] = p.samples ? Json(*p.samples) : Json(nullptr);
  params["score_samples"] = p.score_samples ? Json(*p.score_samples) : Json(nullptr);
  params["seed"] = p.seed ? Json(*p.seed) : Json(nullptr);
  params["all_centers"] = p.all_centers;
  params["checker"] = p.checker;

  Json counters = Json::object();
  for (const auto& [name, value] : report.counters) counters[name] = value;
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(campaign_entry(v));
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) witnesses.push_back(campaign_entry(w));

  Json out{{"schema", kCampaignSchema},
           {"campaign", report.campaign},
           {"parameters", std::move(params)},
           {"profiles_examined", report.profiles_examined},
           {"counters", std::move(counters)},
           {"violation_count", report.violations.size()},
           {"violations", std::move(violations)},
           {"witnesses", std::move(witnesses)}};
  if (include_timing) out["duration_ms"] = report.duration.count();
  return out;
}

inline void save_report(const harness::CampaignReport& report, const std::string& path, bool include_timing = false) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write report '" + path + "'");
  out << campaign_report(report, include_timing).dump(2) << '\n';
}

}  // namespace consensus_lab::json
