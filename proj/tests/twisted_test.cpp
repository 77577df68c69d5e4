#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "oracles.hpp"
#include "twistgame/catalog.hpp"
#include "twistgame/group_ops.hpp"
#include "twistgame/twisted.hpp"

namespace tg = twistgame;
using tg::ElemSet;

namespace {

tg::GroupTable group(const char* label) { return tg::build(tg::find_catalog_entry(label)->spec); }

std::set<std::uint64_t> masks(const std::vector<ElemSet>& sets) {
  std::set<std::uint64_t> out;
  for (const auto& s : sets) out.insert(s.mask());
  return out;
}

}  // namespace

TEST(Twisted, EnumerationMatchesSubsetScan) {
  for (const auto& e : tg::catalog_up_to(16)) {
    SCOPED_TRACE(e.label);
    auto g = tg::build(e.spec);
    auto expected = oracle::all_subsets(g, [&](std::uint64_t m) { return oracle::twisted(g, m); });
    auto got = tg::enumerate_twisted_subgroups(g);
    ASSERT_EQ(got.size(), expected.size());
    EXPECT_EQ(masks(got), std::set<std::uint64_t>(expected.begin(), expected.end()));
    for (std::size_t i = 1; i < got.size(); ++i) EXPECT_TRUE(tg::set_order_less(got[i - 1], got[i]));
  }
}

TEST(Twisted, CyclicPrimeHasOnlyTrivialOnes) {
  for (const char* label : {"Z3", "Z5", "Z7"}) {
    auto g = group(label);
    auto all = tg::enumerate_twisted_subgroups(g);
    ASSERT_EQ(all.size(), 2u) << label;
    EXPECT_EQ(all[0].size(), 1u);
    EXPECT_TRUE(all[1].is_full());
  }
}

TEST(Twisted, ElementaryAbelianTwoGroupEverySubsetWithIdentity) {
  auto g = group("Z2xZ2");
  EXPECT_EQ(tg::enumerate_twisted_subgroups(g).size(), 8u);
}

TEST(Twisted, HeisenbergHasNonSubgroupOfSizeNine) {
  auto g = group("Heis3");
  bool found = false;
  for (const auto& t : tg::enumerate_twisted_subgroups(g))
    if (t.size() == 9 && !tg::is_subgroup(g, t)) found = true;
  EXPECT_TRUE(found);
}

TEST(Twisted, SubgroupsAreTwisted) {
  for (const auto& e : tg::catalog_up_to(100)) {
    auto g = tg::build(e.spec);
    for (const auto& h : tg::enumerate_subgroups(g)) EXPECT_TRUE(tg::is_twisted_subgroup(g, h)) << e.label;
  }
}

TEST(Twisted, MaxProperAndLSet) {
  auto z9 = group("Z9");
  EXPECT_EQ(tg::max_proper_twisted(z9), ElemSet(9, {0, 3, 6}));
  EXPECT_EQ(tg::max_proper_twisted(group("Z5")), ElemSet(5, {0}));
  EXPECT_EQ(tg::max_proper_twisted(group("Heis3")).size(), 9u);
  EXPECT_EQ(tg::L_set(group("Z15")), (std::set<std::size_t>{1, 3, 5}));
  EXPECT_EQ(tg::L_set(group("Z7")), (std::set<std::size_t>{1}));
  for (auto s : tg::L_set(group("Z7:Z3"))) EXPECT_EQ(21 % s, 0u);
  EXPECT_THROW(tg::max_proper_twisted(tg::build(tg::cyclic(1))), tg::Error);
}

TEST(Twisted, MaxProperTieBreakIsLexicographic) {
  // Z3xZ3 has four subgroups of order 3; the first by member list wins.
  auto g = group("Z3xZ3");
  auto best = tg::max_proper_twisted(g);
  std::vector<ElemSet> size3;
  for (const auto& t : tg::enumerate_twisted_subgroups(g))
    if (t.size() == 3) size3.push_back(t);
  ASSERT_GE(size3.size(), 2u);
  for (const auto& t : size3) EXPECT_FALSE(tg::members_lex_less(t, best));
}

TEST(Twisted, ClosureProperties) {
  auto g = group("Heis3");
  for (tg::ElemId a = 0; a < 27; a += 4) {
    ElemSet seed(27, {a});
    auto c = tg::twisted_closure(g, seed);
    EXPECT_TRUE(seed.is_subset_of(c));
    EXPECT_TRUE(tg::is_twisted_subgroup(g, c));
    EXPECT_EQ(tg::twisted_closure(g, c), c);
    auto bigger = tg::twisted_closure(g, ElemSet(27, {a, 5}));
    EXPECT_TRUE(c.is_subset_of(bigger));
    auto bc = tg::betweenness_closure(g, ElemSet(27, {a, 7}));
    EXPECT_TRUE(ElemSet(27, {a, 7}).is_subset_of(bc));
    EXPECT_EQ(tg::betweenness_closure(g, bc), bc);
    EXPECT_TRUE(bc.is_subset_of(tg::betweenness_closure(g, bc | ElemSet(27, {1}))));
  }
}

TEST(Betweenness, ExamplesAgainstBruteForce) {
  auto z5 = group("Z5");
  EXPECT_EQ(tg::between_set(z5, 1, 3), ElemSet(5, {2}));
  auto z4 = group("Z4");
  EXPECT_EQ(tg::between_set(z4, 0, 2), ElemSet(4, {1, 3}));
  EXPECT_TRUE(tg::between_set(z4, 0, 1).empty());
  EXPECT_EQ(tg::between_odd(group("Z9"), 0, 6), 3u);
  EXPECT_THROW(tg::between_odd(z4, 0, 2), tg::Error);
  for (const auto& e : tg::catalog_up_to(16)) {
    auto g = tg::build(e.spec);
    for (tg::ElemId a = 0; a < g.order(); ++a) {
      EXPECT_TRUE(tg::between_set(g, a, a).contains(a));
      for (tg::ElemId c = 0; c < g.order(); ++c) ASSERT_EQ(tg::between_set(g, a, c).mask(), oracle::between(g, a, c));
    }
  }
}

TEST(Betweenness, OddOrderUniqueness) {
  for (const char* label : {"Heis3", "Z7:Z3", "Z15", "Z3xZ3"}) {
    auto g = group(label);
    for (tg::ElemId a = 0; a < g.order(); ++a)
      for (tg::ElemId c = 0; c < g.order(); ++c) {
        auto b = tg::between_set(g, a, c);
        ASSERT_EQ(b.size(), 1u) << label;
        ASSERT_EQ(b.first(), tg::between_odd(g, a, c)) << label;
      }
  }
}

TEST(Betweenness, ClosedSets) {
  auto z9 = group("Z9");
  EXPECT_TRUE(tg::is_betweenness_closed(z9, ElemSet(9)));
  EXPECT_TRUE(tg::is_betweenness_closed(z9, ElemSet(9, {4})));
  EXPECT_TRUE(tg::is_betweenness_closed(z9, ElemSet(9, {1, 4, 7})));
  EXPECT_EQ(tg::betweenness_closure(z9, ElemSet(9, {0, 3})), ElemSet(9, {0, 3, 6}));
  EXPECT_EQ(tg::betweenness_closure(z9, ElemSet(9, {5})), ElemSet(9, {5}));
  auto d3 = group("D3");
  EXPECT_TRUE(tg::betweenness_closure(d3, ElemSet(6, {0, 1})).is_full());
  for (int n = 3; n <= 8; ++n) {
    auto d = tg::build(tg::dihedral(n));
    for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << d.order()); m += 7)
      EXPECT_FALSE(tg::is_betweenness_closed(d, ElemSet::from_mask(d.order(), m))) << "D" << n << " " << m;
  }
}

TEST(Betweenness, EvenOrderSingletonsNeedNotBeClosed) {
  auto z4 = group("Z4");
  // 2 is between 0 and 0 (2 + 2 = 0), then 1 and 3 are between 0 and 2.
  EXPECT_FALSE(tg::is_betweenness_closed(z4, ElemSet(4, {0})));
  EXPECT_EQ(tg::between_set(z4, 0, 0), ElemSet(4, {0, 2}));
  EXPECT_EQ(tg::between_set(z4, 0, 2), ElemSet(4, {1, 3}));
  EXPECT_EQ(tg::betweenness_closure(z4, ElemSet(4, {0})), z4.full_set());
}

TEST(CosetDecompose, Examples) {
  EXPECT_EQ(tg::coset_decompose(group("Z5"), ElemSet(5, {0}))->core, ElemSet(5, {0}));
  auto d = tg::coset_decompose(group("Z9"), ElemSet(9, {1, 4, 7}));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->rep, 1u);
  EXPECT_EQ(d->core, ElemSet(9, {0, 3, 6}));
  EXPECT_TRUE(tg::coset_decompose(group("Z4"), ElemSet(4, {0, 2})));
  EXPECT_FALSE(tg::coset_decompose(group("Z9"), ElemSet(9, {0, 1})));
}

TEST(CosetDecompose, OddOrderEquivalenceWithClosedness) {
  for (const auto& e : tg::catalog_up_to(27, true)) {
    auto g = tg::build(e.spec);
    const auto n = static_cast<tg::ElemId>(g.order());
    for (tg::ElemId a = 0; a < n; ++a)
      for (tg::ElemId b = a; b < n; ++b) {
        auto c = tg::betweenness_closure(g, ElemSet(n, {a, b}));
        ASSERT_TRUE(tg::coset_decompose(g, c).has_value()) << e.label;
      }
    for (const auto& t : tg::enumerate_twisted_subgroups(g))
      for (tg::ElemId x = 0; x < n; ++x) ASSERT_TRUE(tg::is_betweenness_closed(g, tg::translate(g, x, t))) << e.label;
  }
}

TEST(Glauberman, DivisibilityOnOddGroups) {
  for (const char* label : {"Z15", "Heis3", "Z5^2:Z3", "Z7:Z3", "Z45", "Z5xZ9"})
    EXPECT_TRUE(tg::verify_glauberman(group(label))) << label;
  EXPECT_THROW(tg::verify_glauberman(group("Z4")), tg::Error);
}

TEST(Budget, ExhaustionIsReported) {
  tg::Budget tiny;
  tiny.max_results = 5;
  try {
    tg::enumerate_twisted_subgroups(group("Z2xZ2xZ2"), tiny);
    FAIL() << "expected budget-exceeded";
  } catch (const tg::Error& e) {
    EXPECT_EQ(e.code(), tg::ErrorCode::BudgetExceeded);
  }
  tg::Budget instant;
  instant.max_time = std::chrono::milliseconds(0);
  EXPECT_THROW(tg::enumerate_twisted_subgroups(group("Z2xZ2xZ2xZ2"), instant), tg::Error);
}
