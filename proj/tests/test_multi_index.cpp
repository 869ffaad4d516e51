#include "test_util.hpp"

using namespace test_util;

TEST(MultiIndex, EnumerationOrder) {
  EXPECT_EQ(multi_indices(1, 3), (std::vector<MultiIndex>{{3}}));
  EXPECT_EQ(multi_indices(2, 2), (std::vector<MultiIndex>{{2, 0}, {1, 1}, {0, 2}}));
  EXPECT_EQ(multi_indices(3, 4).size(), 15u);
  EXPECT_EQ(multi_indices(3, 0), (std::vector<MultiIndex>{{0, 0, 0}}));
}

TEST(MultiIndex, CountMatchesBinomial) {
  for (int d = 1; d <= 4; ++d)
    for (int n = 0; n <= 8; ++n) {
      const auto all = multi_indices(d, n);
      EXPECT_EQ(all.size(), count_multi_indices(d, n));
      EXPECT_EQ(Q(static_cast<long>(all.size())), binomial<Q>(d + n - 1, n));
    }
}

TEST(MultiIndex, GradedLexIsStrictAndRankConsistent) {
  for (int d = 1; d <= 3; ++d)
    for (int n = 0; n <= 6; ++n) {
      const auto all = multi_indices(d, n);
      for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(multi_index_rank(all[i]), i);
        EXPECT_EQ(all[i].degree(), n);
        if (i > 0) EXPECT_TRUE(all[i - 1] < all[i]);
      }
      if (n > 0) EXPECT_TRUE(multi_indices(d, n - 1).back() < all.front());
    }
}

TEST(MultiIndex, Arithmetic) {
  const MultiIndex a{2, 1, 0};
  EXPECT_EQ(a.factorial<Q>(), Q(2));
  EXPECT_EQ(a.multinomial<Q>(), Q(3));
  EXPECT_EQ(a + MultiIndex({0, 1, 3}), MultiIndex({2, 2, 3}));
  EXPECT_EQ(a - MultiIndex({1, 1, 0}), MultiIndex({1, 0, 0}));
  EXPECT_THROW(a - MultiIndex({0, 2, 0}), std::invalid_argument);
  EXPECT_THROW(MultiIndex({1, -1}), std::invalid_argument);
  EXPECT_TRUE(a.dominates(MultiIndex{1, 1, 0}));
  EXPECT_FALSE(a.dominates(MultiIndex{0, 0, 1}));
  EXPECT_EQ(a.monomial<Q>(std::vector<Q>{q(1, 2), Q(3), Q(7)}), q(3, 4));
  EXPECT_EQ(a.str(), "(2 1 0)");
}
