#include <gtest/gtest.h>

#include "twistgame/elem_set.hpp"

using twistgame::ElemSet;

TEST(ElemSet, BasicMembership) {
  ElemSet s(70, {0, 3, 64, 69});
  EXPECT_EQ(s.size(), 4u);
  EXPECT_TRUE(s.contains(64));
  EXPECT_FALSE(s.contains(65));
  EXPECT_FALSE(s.contains(500));
  EXPECT_TRUE(s.add(5));
  EXPECT_FALSE(s.add(5));
  s.erase(3);
  EXPECT_EQ(s.members(), (std::vector<twistgame::ElemId>{0, 5, 64, 69}));
  EXPECT_EQ(s.first(), 0u);
  EXPECT_EQ(ElemSet(9).first(), 9u);
}

TEST(ElemSet, ComplementRespectsUniverse) {
  ElemSet s(70, {1});
  auto c = s.complement();
  EXPECT_EQ(c.size(), 69u);
  EXPECT_TRUE((c | s).is_full());
  EXPECT_TRUE((c & s).empty());
  EXPECT_EQ((c - c).size(), 0u);
}

TEST(ElemSet, SubsetAndEquality) {
  ElemSet a(10, {1, 2}), b(10, {1, 2, 7});
  EXPECT_TRUE(a.is_subset_of(b));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_EQ(a | ElemSet(10, {7}), b);
  EXPECT_EQ(a.hash(), ElemSet(10, {2, 1}).hash());
}

TEST(ElemSet, HexAndString) {
  EXPECT_EQ(ElemSet(9, {0, 3, 6}).to_hex(), "49");
  EXPECT_EQ(ElemSet(9).to_hex(), "0");
  EXPECT_EQ(ElemSet(70, {64}).to_hex(), "10000000000000000");
  EXPECT_EQ(ElemSet(9, {0, 3}).to_string(), "{0,3}");
}

TEST(ElemSet, MaskRoundTrip) {
  auto s = ElemSet::from_mask(5, 0xff);
  EXPECT_EQ(s.size(), 5u);
  EXPECT_EQ(s.mask(), 0x1fu);
}

TEST(ElemSet, CanonicalOrder) {
  ElemSet small(9, {0, 8}), big(9, {0, 1, 2});
  EXPECT_TRUE(twistgame::set_order_less(small, big));
  EXPECT_FALSE(twistgame::set_order_less(big, small));
  EXPECT_TRUE(twistgame::set_order_less(ElemSet(9, {0, 3, 6}), ElemSet(9, {0, 4, 5})));
  EXPECT_TRUE(twistgame::members_lex_less(ElemSet(9, {0, 1, 2}), ElemSet(9, {0, 8})));
}
