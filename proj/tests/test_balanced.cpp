#include <algorithm>

#include "consensus_lab/balanced.hpp"
#include "consensus_lab/closeness.hpp"
#include "consensus_lab/mahonian.hpp"
#include "consensus_lab/prefs.hpp"
#include "gtest/gtest.h"

using namespace consensus_lab;

namespace {

RelationSet rels(std::initializer_list<const char*> texts) {
  RelationSet out;
  for (const auto* t : texts) out.push_back(parse_relation(t));
  return out;
}

bool contains(const RelationSet& set, const PreferenceRelation& r) {
  return std::find(set.begin(), set.end(), r) != set.end();
}

const PreferenceRelation kCenter = parse_relation("a>b>c");

void check_construction(const PreferenceRelation& center, const PreferenceRelation& first,
                        const PreferenceRelation& second) {
  const auto pair = construct_balanced_pair(center, first, second);
  ASSERT_TRUE(is_balanced(pair));
  EXPECT_EQ(pair.m, collapse_range_end(center.size()));
  EXPECT_TRUE(contains(pair.left, first));
  EXPECT_TRUE(contains(pair.right, second));
  const auto far = reversal(center);
  for (const auto* side : {&pair.left, &pair.right}) {
    EXPECT_FALSE(contains(*side, center));
    EXPECT_FALSE(contains(*side, far));
  }
  const auto phi = distance_preserving_bijection(pair);
  ASSERT_EQ(phi.size(), pair.m);
  for (const auto& [x, y] : phi) {
    EXPECT_TRUE(contains(pair.left, x));
    EXPECT_TRUE(contains(pair.right, y));
    EXPECT_EQ(inversion_distance(x, center), inversion_distance(y, center));
  }
  EXPECT_TRUE(at_least_as_close(pair.left, pair.right, center));
  EXPECT_TRUE(at_least_as_close(pair.right, pair.left, center));
  EXPECT_FALSE(closer_than(pair.left, pair.right, center));
  EXPECT_FALSE(closer_than(pair.right, pair.left, center));
}

}  // namespace

TEST(IsBalanced, Examples) {
  EXPECT_TRUE(is_balanced({rels({"b>a>c", "b>c>a"}), rels({"a>c>b", "c>a>b"}), 2, kCenter}));
  EXPECT_FALSE(is_balanced({rels({"a>b>c"}), rels({"b>a>c"}), 1, kCenter}));
  EXPECT_FALSE(is_balanced({rels({"b>a>c"}), rels({"b>a>c"}), 1, kCenter}));
  EXPECT_FALSE(is_balanced({rels({"b>a>c"}), rels({"a>c>b"}), 2, kCenter}));
  EXPECT_TRUE(is_balanced({{}, {}, 0, kCenter}));
}

TEST(Bijection, ExampleAndEmpty) {
  const BalancedPair pair{rels({"b>a>c", "b>c>a"}), rels({"a>c>b", "c>a>b"}), 2, kCenter};
  const auto phi = distance_preserving_bijection(pair);
  ASSERT_EQ(phi.size(), 2U);
  EXPECT_EQ(phi[0], std::make_pair(parse_relation("b>a>c"), parse_relation("a>c>b")));
  EXPECT_EQ(phi[1], std::make_pair(parse_relation("b>c>a"), parse_relation("c>a>b")));
  EXPECT_TRUE(distance_preserving_bijection({{}, {}, 0, kCenter}).empty());
  EXPECT_THROW(distance_preserving_bijection({rels({"a>b>c"}), rels({"b>a>c"}), 1, kCenter}), ContractError);
}

TEST(Construct, Example) {
  const auto pair = construct_balanced_pair(kCenter, parse_relation("b>a>c"), parse_relation("a>c>b"));
  EXPECT_EQ(pair.m, 2U);
  EXPECT_TRUE(is_balanced(pair));
  EXPECT_TRUE(contains(pair.left, parse_relation("b>a>c")));
  EXPECT_TRUE(contains(pair.right, parse_relation("a>c>b")));
}

TEST(Construct, EveryOrderedPairAtK3AndK4) {
  for (const int k : {3, 4}) {
    const auto all = enumerate_relations(k);
    std::size_t built = 0;
    for (const auto& center : all) {
      const auto far = reversal(center);
      for (const auto& first : all) {
        if (first == center || first == far) continue;
        for (const auto& second : all) {
          if (second == center || second == far || second == first) continue;
          check_construction(center, first, second);
          ++built;
        }
      }
    }
    const std::size_t inner = all.size() - 2;
    EXPECT_EQ(built, all.size() * inner * (inner - 1));
  }
}

TEST(Construct, MatchesMarginAtK4) {
  const auto center = PreferenceRelation::identity(4);
  const auto pair = construct_balanced_pair(center, parse_relation("b>a>c>d"), parse_relation("a>b>d>c"));
  EXPECT_EQ(pair.m, 9U);
}

TEST(Construct, Errors) {
  const auto ab = parse_relation("b>a>c");
  EXPECT_THROW(construct_balanced_pair(kCenter, ab, ab), ContractError);
  EXPECT_THROW(construct_balanced_pair(kCenter, kCenter, ab), ContractError);
  EXPECT_THROW(construct_balanced_pair(kCenter, ab, reversal(kCenter)), ContractError);
  EXPECT_THROW(construct_balanced_pair(kCenter, ab, parse_relation("a>b>d>c")), DimensionError);
}
