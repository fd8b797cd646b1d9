#include <numeric>
#include <vector>

#include "consensus_lab/mahonian.hpp"
#include "consensus_lab/prefs.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace consensus_lab;

// Frozen from oracles::mahonian_by_enumeration.
TEST(Mahonian, SmallRows) {
  EXPECT_EQ(mahonian_table(3).row, (std::vector<std::uint64_t>{1, 2, 2, 1}));
  EXPECT_EQ(mahonian_table(4).row, (std::vector<std::uint64_t>{1, 3, 5, 6, 5, 3, 1}));
  EXPECT_EQ(mahonian_table(5).row, (std::vector<std::uint64_t>{1, 4, 9, 15, 20, 22, 20, 15, 9, 4, 1}));
}

TEST(Mahonian, MatchesEnumeration) {
  for (int k = 3; k <= 8; ++k) EXPECT_EQ(mahonian_table(k).row, oracles::mahonian_by_enumeration(k)) << "K=" << k;
}

TEST(Mahonian, RowInvariantsUpToTwenty) {
  for (int k = 3; k <= kMaxMahonianAlternatives; ++k) {
    const auto t = mahonian_table(k);
    const auto& row = t.row;
    ASSERT_EQ(row.size(), static_cast<std::size_t>(max_distance(k) + 1));
    unsigned __int128 sum = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      sum += row[i];
      EXPECT_EQ(row[i], row[row.size() - 1 - i]);
      if (i > 0 && i + 1 < row.size()) {
        EXPECT_GE(row[i], 2U);
      }
    }
    EXPECT_EQ(sum, detail::factorial(k));
    EXPECT_EQ(row.front(), 1U);
    EXPECT_EQ(row.back(), 1U);
    EXPECT_EQ(t.odd_count % 2, 0);
    EXPECT_EQ(t.margin * 2, t.odd_count);
    EXPECT_LE(4 * t.margin, k * (k - 1)) << "K=" << k;
  }
}

TEST(Mahonian, MatchesDistanceClassSizes) {
  for (int k : {3, 4}) {
    const auto row = mahonian_table(k).row;
    for (const auto& center : enumerate_relations(k)) {
      const auto table = distance_classes(center);
      for (std::size_t d = 0; d < row.size(); ++d) EXPECT_EQ(table.classes[d].size(), row[d]);
    }
  }
}

TEST(Mahonian, DomainAndOverflow) {
  EXPECT_THROW(mahonian_table(2), DomainError);
  EXPECT_THROW(mahonian_table(21), DomainError);
  EXPECT_THROW(detail::factorial(21), OverflowError);
}

TEST(CollapseMargin, Values) {
  EXPECT_EQ(mahonian_table(3).odd_count, 2);
  EXPECT_EQ(collapse_margin(3), 1);
  EXPECT_EQ(collapse_margin(4), 3);
  EXPECT_LE(collapse_margin(4) * 4, 4 * 3);
  // Odd entries of (1,4,9,15,20,22,20,15,9,4,1) sit at k = 0,2,3,7,8,10.
  EXPECT_EQ(collapse_margin(5), 3);
  EXPECT_EQ(collapse_range_end(3), 2U);
  EXPECT_EQ(collapse_range_end(4), 9U);
}

TEST(CorollaryInequality, HoldsFromThreeToTwenty) {
  EXPECT_TRUE(factorial_within_collapse_range(3));  // 2 <= 3 - 1
  EXPECT_TRUE(factorial_within_collapse_range(4));  // 6 <= 12 - 3
  EXPECT_TRUE(factorial_within_collapse_range(5));  // 24 <= 60 - 3
  for (int k = 3; k <= kMaxMahonianAlternatives; ++k) EXPECT_TRUE(factorial_within_collapse_range(k)) << k;
  // The K = 3 case is tight.
  EXPECT_EQ(detail::factorial(2), collapse_range_end(3));
}
