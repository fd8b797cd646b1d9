#include <algorithm>
#include <set>
#include <vector>

#include "consensus_lab/prefs.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace consensus_lab;

namespace {

std::vector<int> as_vector(const PreferenceRelation& p) { return {p.ranking().begin(), p.ranking().end()}; }

}  // namespace

TEST(InversionDistance, SmallCases) {
  const auto abc = parse_relation("a>b>c");
  EXPECT_EQ(inversion_distance(abc, abc), 0);
  EXPECT_EQ(inversion_distance(abc, parse_relation("b>a>c")), 1);
  EXPECT_EQ(inversion_distance(abc, parse_relation("c>b>a")), 3);
}

TEST(InversionDistance, MismatchedKIsDimensionError) {
  EXPECT_THROW(inversion_distance(parse_relation("a>b>c"), parse_relation("a>b>c>d")), DimensionError);
}

TEST(InversionDistance, MetricAxioms) {
  for (int k : {3, 4}) {
    const auto all = enumerate_relations(k);
    for (const auto& p : all) {
      for (const auto& q : all) {
        const int d = inversion_distance(p, q);
        EXPECT_EQ(d, inversion_distance(q, p));
        EXPECT_EQ(d == 0, p == q);
        EXPECT_LE(d, max_distance(k));
        for (const auto& s : all) EXPECT_LE(d, inversion_distance(p, s) + inversion_distance(s, q));
      }
    }
  }
}

TEST(InversionDistance, MatchesPairSetDifference) {
  for (int k : {3, 4, 5}) {
    const auto all = enumerate_relations(k);
    for (const auto& p : all) {
      for (const auto& q : all) {
        ASSERT_EQ(inversion_distance(p, q), oracles::pair_set_distance(as_vector(p), as_vector(q)));
      }
    }
  }
}

TEST(InversionDistance, RelabelingInvariance) {
  const auto all = enumerate_relations(3);
  for (const auto& rho : all) {
    for (const auto& p : all) {
      for (const auto& q : all) {
        EXPECT_EQ(inversion_distance(relabel(p, rho), relabel(q, rho)), inversion_distance(p, q));
      }
    }
  }
}

TEST(Reversal, Basics) {
  EXPECT_EQ(reversal(parse_relation("a>b>c")), parse_relation("c>b>a"));
  const auto abcd = parse_relation("a>b>c>d");
  EXPECT_EQ(reversal(abcd), parse_relation("d>c>b>a"));
  EXPECT_EQ(inversion_distance(abcd, reversal(abcd)), 6);
  for (const auto& p : enumerate_relations(4)) {
    EXPECT_EQ(reversal(reversal(p)), p);
    EXPECT_EQ(inversion_distance(p, reversal(p)), max_distance(4));
  }
}

TEST(EnumerateRelations, CountsOrderAndErrors) {
  EXPECT_EQ(enumerate_relations(3).size(), 6U);
  EXPECT_EQ(enumerate_relations(4).size(), 24U);
  EXPECT_EQ(enumerate_relations(3).front(), parse_relation("a>b>c"));
  const auto all = enumerate_relations(4);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::set<PreferenceRelation>(all.begin(), all.end()).size(), all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].index(), i);
    EXPECT_EQ(PreferenceRelation::from_index(4, i), all[i]);
  }
  EXPECT_THROW(enumerate_relations(2), DomainError);
  EXPECT_THROW(enumerate_relations(0), DomainError);
}

TEST(DistanceClasses, SizesAndEndpoints) {
  const auto center = parse_relation("a>b>c");
  const auto table = distance_classes(center);
  ASSERT_EQ(table.classes.size(), 4U);
  std::vector<std::size_t> sizes;
  for (const auto& c : table.classes) sizes.push_back(c.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 2, 1}));
  EXPECT_EQ(table.classes[0], RelationSet{center});
  EXPECT_EQ(table.classes[3], RelationSet{parse_relation("c>b>a")});
}

TEST(DistanceClasses, PartitionAndSymmetryForEveryCenter) {
  for (int k : {3, 4}) {
    for (const auto& center : enumerate_relations(k)) {
      const auto table = distance_classes(center);
      std::size_t total = 0;
      const std::size_t top = table.classes.size() - 1;
      for (std::size_t d = 0; d <= top; ++d) {
        total += table.classes[d].size();
        EXPECT_EQ(table.classes[d].size(), table.classes[top - d].size());
        for (const auto& r : table.classes[d]) EXPECT_EQ(static_cast<std::size_t>(inversion_distance(r, center)), d);
      }
      EXPECT_EQ(total, k == 3 ? 6U : 24U);
      EXPECT_EQ(table.classes[top], RelationSet{reversal(center)});
    }
  }
}

TEST(Profile, CountSet) {
  const auto abc = parse_relation("a>b>c");
  const auto bac = parse_relation("b>a>c");
  const auto profile = Profile::from_relations(3, {{abc, 3}, {bac, 2}});
  EXPECT_EQ(profile.total(), 5U);
  EXPECT_EQ(count_set(profile, RelationSet{}), 0U);
  EXPECT_EQ(count_set(profile, enumerate_relations(3)), 5U);
  EXPECT_EQ(count_set(profile, RelationSet{abc, bac}), 5U);
  EXPECT_EQ(count_set(profile, RelationSet{parse_relation("c>b>a")}), 0U);
}

TEST(Profile, Invariants) {
  EXPECT_THROW(Profile(3, std::vector<std::uint64_t>(6, 0)), ContractError);
  EXPECT_THROW(Profile(3, std::vector<std::uint64_t>(5, 1)), DimensionError);
  EXPECT_THROW(Profile::from_relations(3, {{parse_relation("a>b>c>d"), 1}}), DimensionError);
  const auto p = Profile::from_relations(3, {{parse_relation("a>b>c"), 1}, {parse_relation("a>b>c"), 2}});
  EXPECT_EQ(p.count(parse_relation("a>b>c")), 3U);
}

TEST(ParseRelation, GrammarAndErrors) {
  EXPECT_EQ(as_vector(parse_relation("a > b > c")), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(as_vector(parse_relation("c>b>a")), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(as_vector(parse_relation("  b >a>   c ")), (std::vector<int>{2, 1, 3}));
  try {
    parse_relation("a > a > c");
    FAIL() << "duplicate accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4U);
  }
  EXPECT_THROW(parse_relation("a > b > d"), ParseError);
  EXPECT_THROW(parse_relation("a > b"), ParseError);
  EXPECT_THROW(parse_relation("a > > c"), ParseError);
  EXPECT_THROW(parse_relation("a b > c > d", 3), ParseError);
  EXPECT_THROW(parse_relation("a > b > c", 4), ParseError);
}

TEST(ParseRelation, RoundTripsWithRender) {
  for (const auto& p : enumerate_relations(5)) EXPECT_EQ(parse_relation(render_relation(p)), p);
  const AlternativeNames names({"red", "green", "blue"});
  const auto r = names.parse("blue > red > green");
  EXPECT_EQ(names.render(r), "blue>red>green");
  EXPECT_EQ(names.parse(names.render(r)), r);
}

TEST(PreferenceRelation, RejectsNonPermutations) {
  EXPECT_THROW(PreferenceRelation::from_ranking({1, 2}), DomainError);
  EXPECT_THROW(PreferenceRelation::from_ranking({1, 1, 2}), ContractError);
  EXPECT_THROW(PreferenceRelation::from_ranking({1, 2, 4}), ContractError);
}
