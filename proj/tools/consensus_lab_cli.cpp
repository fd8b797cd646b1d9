#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "consensus_lab/consensus_lab.hpp"
#include "consensus_lab/json.hpp"

namespace cl = consensus_lab;
using cl::json::Json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<std::string> split_relations(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
  }
  return out;
}

cl::RelationSet parse_set(const std::string& text, const cl::AlternativeNames& names) {
  cl::RelationSet out;
  for (const auto& item : split_relations(text)) out.push_back(names.parse(item));
  return out;
}

double parse_theta(const std::string& text) {
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  }
  return std::stod(text);
}

cl::Checker parse_checker(const std::string& name) {
  if (name == "fast") return cl::Checker::fast;
  if (name == "bruteforce") return cl::Checker::bruteforce;
  throw cl::ContractError("unknown checker '" + name + "' (expected fast or bruteforce)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-r consensus toolkit: inversion metric, Mahonian numbers, set closeness, "
               "consensus levels, balanced pairs, voting rules and verification campaigns"};
  app.require_subcommand(1);
  int exit_code = 0;

  // mahonian
  auto* mahonian = app.add_subcommand("mahonian", "Mahonian row, odd-class count, margin and bound checks");
  int mahonian_k = 0;
  mahonian->add_option("--k", mahonian_k, "Number of alternatives (3..20)")->required();
  mahonian->callback([&] { print(cl::json::mahonian(cl::mahonian_table(mahonian_k))); });

  // distance
  auto* distance = app.add_subcommand("distance", "Inversion distance between two relations");
  std::string dist_p;
  std::string dist_q;
  distance->add_option("p", dist_p, "First relation, e.g. a>b>c")->required();
  distance->add_option("q", dist_q, "Second relation")->required();
  distance->callback([&] {
    const auto p = cl::parse_relation(dist_p);
    const auto q = cl::parse_relation(dist_q, p.size());
    print(Json{{"p", cl::render_relation(p)},
               {"q", cl::render_relation(q)},
               {"distance", cl::inversion_distance(p, q)},
               {"max_distance", cl::max_distance(p.size())}});
  });

  // closer
  auto* closer = app.add_subcommand("closer", "Closeness of two equal-size sets of relations to a center");
  std::string closer_center;
  std::string closer_left;
  std::string closer_right;
  bool closer_oracle = false;
  closer->add_option("--center", closer_center, "Center relation")->required();
  closer->add_option("--left", closer_left, "Comma-separated relations of the left set")->required();
  closer->add_option("--right", closer_right, "Comma-separated relations of the right set")->required();
  closer->add_flag("--oracle", closer_oracle, "Also decide both relations by exhaustive injection search");
  closer->callback([&] {
    const auto center = cl::parse_relation(closer_center);
    const cl::AlternativeNames names(center.size());
    const auto left = parse_set(closer_left, names);
    const auto right = parse_set(closer_right, names);
    const auto weak = cl::at_least_as_close(left, right, center);
    const auto strict = cl::closer_than(left, right, center);
    Json out{{"center", names.render(center)},
             {"left", cl::json::relation_set(left, names)},
             {"right", cl::json::relation_set(right, names)},
             {"at_least_as_close", weak.has_value()},
             {"closer_than", strict.has_value()},
             {"witness", cl::json::witness(weak, names)}};
    if (closer_oracle) {
      out["oracle_at_least_as_close"] = cl::injection_oracle(left, right, center, false).has_value();
      out["oracle_closer_than"] = cl::injection_oracle(left, right, center, true).has_value();
    }
    print(out);
  });

  // consensus
  auto* consensus = app.add_subcommand("consensus", "Consensus verdicts of a ballot-file profile around a center");
  std::string cons_profile;
  std::string cons_center;
  std::optional<std::uint64_t> cons_r;
  bool cons_spectrum = false;
  bool cons_verify = false;
  bool cons_shortcut = false;
  std::string cons_checker = "fast";
  unsigned cons_workers = 1;
  consensus->add_option("--profile", cons_profile, "Ballot file")->required();
  consensus->add_option("--center", cons_center, "Center relation")->required();
  consensus->add_option("--r", cons_r, "Single level to decide");
  consensus->add_flag("--spectrum", cons_spectrum, "All levels 1..K!/2 (default when --r is absent)");
  consensus->add_flag("--shortcut", cons_shortcut,
                      "Copy the level-1 verdict across the collapse range instead of evaluating each level");
  consensus->add_flag("--verify", cons_verify,
                      "Re-decide every reported level with the brute-force checker and report agreement");
  consensus->add_option("--checker", cons_checker, "fast or bruteforce");
  consensus->add_option("--workers", cons_workers, "Concurrent workers for the spectrum");
  consensus->callback([&] {
    const auto ballots = cl::harness::load_ballots(cons_profile);
    const auto center = ballots.names.parse(cons_center);
    const auto checker = parse_checker(cons_checker);
    Json out;
    std::vector<cl::LevelVerdict> reported;
    if (cons_r && !cons_spectrum) {
      auto v = cl::exhibits_level_r(ballots.profile, center, *cons_r, checker);
      out = Json{{"schema", cl::json::kConsensusSchema},
                 {"center", ballots.names.render(center)},
                 {"level", cl::json::level_verdict(v, ballots.names)}};
      reported.push_back(std::move(v));
    } else {
      cl::SpectrumOptions options;
      options.collapse_shortcut = cons_shortcut;
      options.checker = checker;
      options.workers = cons_workers;
      const auto report = cl::consensus_spectrum(ballots.profile, center, options);
      out = cl::json::consensus_report(report, ballots.names);
      reported = report.levels;
    }
    if (cons_verify) {
      bool agree = true;
      for (const auto& v : reported) {
        agree = agree && cl::exhibits_level_r_bruteforce(ballots.profile, center, v.level).holds == v.holds;
      }
      out["verified_against_bruteforce"] = agree;
      if (!agree) exit_code = kExitViolation;
    }
    out["profile"] = cl::json::profile(ballots.profile, ballots.names);
    print(out);
  });

  // balanced
  auto* balanced = app.add_subcommand("balanced", "Construct the (K!/2 - c)-balanced pair separating two relations");
  std::string bal_center;
  std::string bal_r1;
  std::string bal_r2;
  balanced->add_option("--center", bal_center, "Center relation")->required();
  balanced->add_option("--r1", bal_r1, "Relation placed in the left set")->required();
  balanced->add_option("--r2", bal_r2, "Relation placed in the right set")->required();
  balanced->callback([&] {
    const auto center = cl::parse_relation(bal_center);
    const cl::AlternativeNames names(center.size());
    const auto r1 = names.parse(bal_r1);
    const auto r2 = names.parse(bal_r2);
    const auto pair = cl::construct_balanced_pair(center, r1, r2);
    auto out = cl::json::balanced_pair(pair, names);
    out["expected_m"] = cl::collapse_range_end(center.size());
    out["r1_in_left"] = std::find(pair.left.begin(), pair.left.end(), r1) != pair.left.end();
    out["r2_in_right"] = std::find(pair.right.begin(), pair.right.end(), r2) != pair.right.end();
    print(out);
  });

  // winners
  auto* winners = app.add_subcommand("winners", "Scoring-rule winners of a ballot-file profile");
  std::string win_profile;
  std::string win_rule = "borda";
  std::string win_scores;
  winners->add_option("--profile", win_profile, "Ballot file")->required();
  winners->add_option("--rule", win_rule, "borda, plurality, antiplurality or custom")
      ->check(CLI::IsMember({"borda", "plurality", "antiplurality", "custom"}));
  winners->add_option("--scores", win_scores, "Custom scores \"s1,s2,...\" (integers, p/q or decimals)");
  winners->callback([&] {
    const auto ballots = cl::harness::load_ballots(win_profile);
    const int k = ballots.profile.alternatives();
    std::optional<cl::ScoreVector> scores;
    if (win_rule == "borda") scores = cl::ScoreVector::borda(k);
    if (win_rule == "plurality") scores = cl::ScoreVector::plurality(k);
    if (win_rule == "antiplurality") scores = cl::ScoreVector::antiplurality(k);
    if (win_rule == "custom") {
      if (win_scores.empty()) throw cl::ContractError("--rule custom needs --scores");
      scores = cl::ScoreVector::parse(win_scores);
    }
    const auto totals = cl::scoring_totals(ballots.profile, *scores);
    Json total_json = Json::object();
    for (int a = 1; a <= k; ++a) {
      const auto& t = totals[static_cast<std::size_t>(a - 1)];
      total_json[ballots.names.name({a})] =
          t.denominator() == 1 ? std::to_string(t.numerator())
                               : std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
    }
    Json names = Json::array();
    for (const auto a : cl::scoring_winners(ballots.profile, *scores)) names.push_back(ballots.names.name(a));
    print(Json{{"rule", win_rule},
               {"scores", cl::json::score_vector(*scores)},
               {"totals", std::move(total_json)},
               {"winners", std::move(names)}});
  });

  // majority
  auto* majority = app.add_subcommand("majority", "Pairwise majority relation and Condorcet winners");
  std::string maj_profile;
  majority->add_option("--profile", maj_profile, "Ballot file")->required();
  majority->callback([&] {
    const auto ballots = cl::harness::load_ballots(maj_profile);
    const auto& names = ballots.names;
    const cl::MajorityRelation m(ballots.profile);
    Json tallies = Json::array();
    for (int a = 1; a <= m.alternatives(); ++a) {
      for (int b = a + 1; b <= m.alternatives(); ++b) {
        tallies.push_back(Json{{"a", names.name({a})},
                               {"b", names.name({b})},
                               {"a_over_b", m.tally({a}, {b})},
                               {"b_over_a", m.tally({b}, {a})}});
      }
    }
    Json pairs = Json::array();
    for (const auto& [a, b] : m.pairs()) pairs.push_back(Json::array({names.name(a), names.name(b)}));
    auto winner_json = [&](cl::CondorcetMode mode) -> Json {
      const auto w = cl::condorcet_winner(ballots.profile, mode);
      if (!w) return nullptr;
      return Json{{"winner", names.name(w->winner)}, {"tie_broken", w->tie_broken}};
    };
    print(Json{{"tallies", std::move(tallies)},
               {"pairs", std::move(pairs)},
               {"complete", m.is_complete()},
               {"transitive", m.is_transitive()},
               {"condorcet_strict", winner_json(cl::CondorcetMode::strict)},
               {"condorcet_weak", winner_json(cl::CondorcetMode::weak)}});
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification campaign; exit code 1 if any violation is found");
  std::string campaign;
  int ver_k = 3;
  std::uint64_t ver_n_max = 4;
  std::uint64_t ver_samples = 1000;
  std::uint64_t ver_seed = 42;
  std::uint64_t ver_score_samples = 20;
  std::string ver_json;
  bool ver_all_centers = false;
  bool ver_timing = false;
  unsigned ver_workers = 1;
  verify->add_option("campaign", campaign, "collapse, scoring, majority or gap")
      ->required()
      ->check(CLI::IsMember({"collapse", "scoring", "majority", "gap"}));
  verify->add_option("--k", ver_k, "Number of alternatives");
  verify->add_option("--n-max", ver_n_max,
                     "Largest profile size (exhaustive runs) or the fixed profile size (sampled collapse, K >= 4)");
  verify->add_option("--samples", ver_samples, "Sampled profiles for collapse at K >= 4");
  verify->add_option("--score-samples", ver_score_samples, "Random score vectors for the scoring campaign");
  verify->add_option("--seed", ver_seed, "Seed for sampled campaigns");
  verify->add_option("--json", ver_json, "Write the report to this file instead of stdout");
  verify->add_flag("--all-centers", ver_all_centers, "Sweep every center (collapse and gap at K = 3)");
  verify->add_flag("--timing", ver_timing, "Include wall-clock duration in the JSON report");
  verify->add_option("--workers", ver_workers, "Concurrent workers");
  verify->callback([&] {
    cl::harness::CampaignOptions options;
    options.all_centers = ver_all_centers;
    options.workers = ver_workers;
    cl::harness::CampaignReport report;
    if (campaign == "collapse") {
      report = ver_k == 3 ? cl::harness::verify_collapse_exhaustive(ver_k, ver_n_max, options)
                          : cl::harness::verify_collapse_sampled(ver_k, ver_n_max, ver_samples, ver_seed, ver_workers);
    } else if (campaign == "scoring") {
      report = cl::harness::verify_scoring_theorem(ver_k, ver_n_max, ver_score_samples, ver_seed, ver_workers);
    } else if (campaign == "majority") {
      report = cl::harness::verify_majority_and_condorcet(ver_k, ver_n_max, ver_workers);
    } else {
      report = cl::harness::find_gap_witness(ver_k, ver_n_max, options);
    }
    if (ver_json.empty()) {
      print(cl::json::campaign_report(report, ver_timing));
    } else {
      cl::json::save_report(report, ver_json, ver_timing);
    }
    std::cerr << report.campaign << ": " << report.profiles_examined << " profiles, " << report.violations.size()
              << " violations, " << report.duration.count() << " ms\n";
    if (!report.ok()) exit_code = kExitViolation;
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Sample a distance-decay profile and print it as a ballot file");
  std::string gen_center;
  std::string gen_theta;
  std::uint64_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--center", gen_center, "Center relation")->required();
  gen->add_option("--theta", gen_theta, "Decay in (0, 1], decimal or p/q")->required();
  gen->add_option("--n", gen_n, "Number of individuals")->required();
  gen->add_option("--seed", gen_seed, "Seed")->required();
  gen->add_option("--out", gen_out, "Write to this file instead of stdout");
  gen->callback([&] {
    const auto center = cl::parse_relation(gen_center);
    const auto profile = cl::harness::generate_profile(center, parse_theta(gen_theta), gen_n, gen_seed);
    const cl::AlternativeNames names(center.size());
    if (gen_out.empty()) {
      std::cout << cl::harness::render_ballots(profile, names);
    } else {
      cl::harness::save_ballots(profile, names, gen_out);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const cl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const cl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return exit_code;
}
