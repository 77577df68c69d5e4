#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "oracles.hpp"
#include "twistgame/census.hpp"

namespace tg = twistgame;

TEST(Census, DefaultRangeHasOracleEqualsTheory) {
  tg::CensusOptions opts;
  opts.timing = false;
  auto result = tg::run_census({16, false, {}}, opts);
  EXPECT_TRUE(result.ok);
  EXPECT_EQ(result.records.size(), tg::catalog_up_to(16).size());
  for (const auto& r : result.records) {
    ASSERT_TRUE(r.f_oracle) << r.group_label;
    ASSERT_TRUE(r.theory.f_theory) << r.group_label;
    EXPECT_EQ(*r.f_oracle, *r.theory.f_theory) << r.group_label;
    EXPECT_EQ(r.status, "ok");
  }
}

TEST(Census, CyclicOracleColumnIsFStar) {
  tg::CensusOptions opts;
  auto result = tg::run_census({16, false, {"cyclic"}}, opts);
  ASSERT_EQ(result.records.size(), 15u);
  for (const auto& r : result.records) EXPECT_EQ(*r.f_oracle, oracle::f_star_reference(static_cast<long long>(r.order)));
}

TEST(Census, OddRowsPassDivisibility) {
  tg::CensusOptions opts;
  opts.jobs = 2;
  auto result = tg::run_census({81, true, {}}, opts);
  EXPECT_TRUE(result.ok);
  for (const auto& r : result.records) {
    ASSERT_TRUE(r.glauberman_ok) << r.group_label;
    EXPECT_TRUE(*r.glauberman_ok) << r.group_label;
    ASSERT_TRUE(r.L_sizes);
  }
}

TEST(Census, JsonlIsDeterministicAndOrdered) {
  tg::CensusOptions a, b;
  a.timing = b.timing = false;
  a.jobs = 1;
  b.jobs = 3;
  auto ra = tg::run_census({12, false, {}}, a);
  auto rb = tg::run_census({12, false, {}}, b);
  auto ja = tg::census_jsonl(ra, false);
  EXPECT_EQ(ja, tg::census_jsonl(rb, false));
  std::istringstream lines(ja);
  std::string line;
  std::size_t i = 0;
  auto entries = tg::select_catalog({12, false, {}});
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["group_label"], entries[i++].label);
    EXPECT_FALSE(j.contains("runtimes_ms"));
  }
  EXPECT_EQ(i, entries.size());
  const auto timed = tg::census_jsonl(ra, true);
  EXPECT_TRUE(nlohmann::json::parse(timed.substr(0, timed.find('\n'))).contains("runtimes_ms"));
  EXPECT_NE(tg::census_summary(ra).find("invariant failures"), std::string::npos);
}

TEST(Census, BudgetRowsAreMarkedNotFatal) {
  tg::CensusOptions opts;
  opts.budget.max_results = 3;
  auto result = tg::run_census({27, true, {"heisenberg_p"}}, opts);
  ASSERT_EQ(result.records.size(), 1u);
  EXPECT_EQ(result.records[0].status, "budget-exceeded");
  EXPECT_TRUE(result.ok);
}

TEST(NonSubgroupTwisted, Examples) {
  for (int n : {4, 8, 9, 12, 15, 16, 21, 27, 45}) EXPECT_FALSE(tg::find_nonsubgroup_twisted(tg::build(tg::cyclic(n)))) << n;
  for (const char* label : {"Heis3", "Z5^2:Z3"}) {
    auto g = tg::build(tg::find_catalog_entry(label)->spec);
    auto w = tg::find_nonsubgroup_twisted(g);
    ASSERT_TRUE(w) << label;
    EXPECT_TRUE(tg::is_twisted_subgroup(g, *w));
    EXPECT_FALSE(tg::is_subgroup(g, *w));
    for (const auto& t : tg::enumerate_twisted_subgroups(g))
      if (!tg::is_subgroup(g, t)) {
        EXPECT_FALSE(tg::set_order_less(t, *w)) << label;
      }
  }
}
