#include <gtest/gtest.h>

#include <set>

#include "symqva/partitions.hpp"

using namespace symqva;

namespace {

// Partition count p(n, k) with parts at most k, by the standard recurrence.
long count_partitions(int n, int k) {
  if (n == 0) return 1;
  if (n < 0 || k == 0) return 0;
  return count_partitions(n - k, k) + count_partitions(n, k - 1);
}

}  // namespace

TEST(Partitions, Enumeration) {
  EXPECT_EQ(partitions_of(0), std::vector<Partition>{Partition{}});
  EXPECT_EQ(partitions_of(3), (std::vector<Partition>{{3}, {2, 1}, {1, 1, 1}}));
  EXPECT_EQ(partitions_of(5).size(), 7U);
  for (int n = 0; n <= 12; ++n) {
    const auto ps = partitions_of(n);
    EXPECT_EQ(static_cast<long>(ps.size()), count_partitions(n, n));
    EXPECT_EQ(std::set<Partition>(ps.begin(), ps.end()).size(), ps.size());
    for (const auto& p : ps) EXPECT_EQ(p.weight(), n);
  }
}

TEST(Partitions, RejectsInvalidParts) {
  EXPECT_THROW(Partition({1, 2}), DomainError);
  EXPECT_THROW(Partition({2, 0}), DomainError);
  EXPECT_THROW(partitions_of(-1), DomainError);
}

TEST(Partitions, Dominance) {
  EXPECT_TRUE(dominance_leq({1, 1, 1}, {3}));
  EXPECT_TRUE(dominance_leq({2, 1, 1}, {3, 1}));
  EXPECT_FALSE(dominance_leq({3, 1, 1, 1}, {2, 2, 2}));
  EXPECT_FALSE(dominance_leq({2, 2, 2}, {3, 1, 1, 1}));
  EXPECT_FALSE(dominance_comparable({3, 1, 1, 1}, {2, 2, 2}));
  EXPECT_THROW(dominance_leq({2}, {1}), DomainError);
}

TEST(Partitions, DominanceIsAPartialOrder) {
  for (int n = 0; n <= 8; ++n) {
    const auto ps = partitions_of(n);
    for (const auto& a : ps) {
      EXPECT_TRUE(dominance_leq(a, a));
      for (const auto& b : ps) {
        if (a != b) {
          EXPECT_FALSE(dominance_leq(a, b) && dominance_leq(b, a));
        }
        for (const auto& c : ps) {
          if (dominance_leq(a, b) && dominance_leq(b, c)) {
            EXPECT_TRUE(dominance_leq(a, c));
          }
        }
      }
    }
  }
}

TEST(Partitions, LinearExtensionRefinesDominance) {
  EXPECT_EQ(linear_extension(partitions_of(4)), (std::vector<Partition>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}}));
  EXPECT_EQ(linear_extension({{2, 1}, {3}}), (std::vector<Partition>{{3}, {2, 1}}));
  EXPECT_EQ(linear_extension({{2, 1}}), std::vector<Partition>{Partition({2, 1})});
  EXPECT_THROW(linear_extension({{2}, {1}}), DomainError);
  for (int n = 1; n <= 8; ++n) {
    const auto ext = linear_extension(partitions_of(n));
    for (std::size_t i = 0; i < ext.size(); ++i)
      for (std::size_t j = i + 1; j < ext.size(); ++j) EXPECT_FALSE(dominance_leq(ext[i], ext[j]));
  }
}

TEST(Partitions, ZConstant) {
  EXPECT_EQ(z_of({}), 1);
  EXPECT_EQ(z_of({2, 1, 1}), 4);
  EXPECT_EQ(z_of({7}), 7);
  EXPECT_EQ(z_of({2, 2, 1}), 8);
  // sum over partitions of n of 1/z = 1 (class-size identity).
  for (int n = 1; n <= 9; ++n) {
    mpq_class acc = 0;
    for (const auto& p : partitions_of(n)) acc += mpq_class(1, 1) / mpq_class(z_of(p));
    EXPECT_EQ(acc, 1);
  }
}

TEST(Partitions, CanonicalOrder) {
  EXPECT_LT(Partition({3}), Partition({1, 1, 1, 1}));
  EXPECT_LT(Partition({3, 1}), Partition({2, 2}));
  EXPECT_EQ(Partition::from_multiset({1, 3, 2}), Partition({3, 2, 1}));
  EXPECT_EQ(Partition({2, 1}).joined({2}), Partition({2, 2, 1}));
  EXPECT_EQ(Partition({2, 2, 1}).without_part(2), Partition({2, 1}));
}
