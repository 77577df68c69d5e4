#include <gtest/gtest.h>

#include <functional>

#include "twistgame/catalog.hpp"
#include "twistgame/solver.hpp"
#include "twistgame/strategies.hpp"
#include "twistgame/theory.hpp"

namespace tg = twistgame;
using tg::ElemSet;

namespace {

tg::GroupTable group(const char* label) { return tg::build(tg::find_catalog_entry(label)->spec); }

std::size_t visits(const tg::GroupTable& g, const tg::ExplorerStrategy& es, const tg::DirectorStrategy& ds) {
  return tg::play_match(g, 0, es, ds, 10 * g.order()).final_visited.size();
}

}  // namespace

TEST(AvoidStrategy, RejectsUnsoundSets) {
  auto z9 = group("Z9");
  try {
    tg::director_avoid_strategy(z9, ElemSet(9, {1, 2}));
    FAIL();
  } catch (const tg::Error& e) {
    EXPECT_EQ(e.code(), tg::ErrorCode::PreconditionViolated);
  }
}

TEST(AvoidStrategy, EmptySetPlaysPlus) {
  auto z9 = group("Z9");
  auto d = tg::director_avoid_strategy(z9, ElemSet(9)).make();
  auto s = tg::apply_move(tg::GameState::start(z9), tg::ExplorerMove{4});
  EXPECT_EQ(d->choose(s), tg::Sign::Plus);
}

TEST(AvoidStrategy, ExhaustiveExplorerTreesOnZ9) {
  auto z9 = group("Z9");
  const ElemSet b(9, {1, 4, 7});
  auto ds = tg::director_avoid_strategy(z9, b);
  auto d = ds.make();
  std::size_t leaves = 0;
  std::function<void(const tg::GameState&, int)> walk = [&](const tg::GameState& s, int depth) {
    ASSERT_FALSE(b.contains(s.pos));
    if (depth == 6) {
      ++leaves;
      return;
    }
    for (tg::ElemId e = 0; e < 9; ++e) {
      auto named = tg::apply_move(s, tg::ExplorerMove{e});
      walk(tg::apply_move(named, tg::DirectorMove{d->choose(named)}), depth + 1);
    }
  };
  walk(tg::GameState::start(z9), 0);
  EXPECT_EQ(leaves, 531441u);
}

TEST(AvoidStrategy, RandomExplorersNeverEnterMaxTwistedCoset) {
  for (const auto& e : tg::catalog_up_to(45, true)) {
    auto g = tg::build(e.spec);
    if (g.order() == 1) continue;
    auto b = tg::theoretical_avoid_set(g);
    auto ds = tg::director_avoid_strategy(g, b);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto t = tg::play_match(g, 0, tg::random_explorer(seed), ds, 10 * g.order());
      EXPECT_TRUE((t.final_visited & b).empty()) << e.label;
    }
  }
}

TEST(TwoPowerSweep, Scripts) {
  auto z4 = group("Z4");
  EXPECT_TRUE(tg::explorer_two_power_sweep(z4, 0).empty());
  EXPECT_EQ(tg::explorer_two_power_sweep(z4, 1), (std::vector<tg::ElemId>{1, 2}));
  EXPECT_EQ(tg::explorer_two_power_sweep(group("Z8"), 1), (std::vector<tg::ElemId>{1, 2, 4}));
  try {
    tg::explorer_two_power_sweep(group("Z6"), 2);
    FAIL();
  } catch (const tg::Error& e) {
    EXPECT_EQ(e.code(), tg::ErrorCode::OrderNotPowerOfTwo);
  }
}

TEST(TwoPowerSweep, ReachesTargetAgainstEveryReplySequence) {
  for (const char* label : {"Z4", "Z8", "Z16", "D4", "Q8", "Z2xZ8"}) {
    auto g = group(label);
    for (tg::ElemId t = 0; t < g.order(); ++t) {
      if (!tg::is_power_of_two(tg::element_order(g, t))) continue;
      auto script = tg::explorer_two_power_sweep(g, t);
      for (std::uint64_t replies = 0; replies < (1u << script.size()); ++replies) {
        tg::ElemId pos = 0;
        bool reached = t == 0;
        for (std::size_t i = 0; i < script.size() && !reached; ++i) {
          pos = g.mul(pos, (replies >> i) & 1u ? g.inv(script[i]) : script[i]);
          reached = pos == t;
        }
        EXPECT_TRUE(reached) << label << " t=" << t << " replies=" << replies;
      }
    }
  }
}

TEST(CosetStrategy, LowerBoundAgainstOptimalDirector) {
  auto z6 = group("Z6");
  auto es = tg::explorer_coset_strategy(z6, ElemSet(6, {0, 3}), tg::sweep_walker_explorer(), tg::attractor_explorer());
  EXPECT_GE(visits(z6, es, tg::optimal_director(tg::solve_exact(z6))), 4u);
  auto z12 = group("Z12");
  auto es12 =
      tg::explorer_coset_strategy(z12, ElemSet(12, {0, 3, 6, 9}), tg::sweep_walker_explorer(), tg::attractor_explorer());
  EXPECT_GE(visits(z12, es12, tg::optimal_director(tg::solve_exact(z12))), 8u);
  auto trivial = tg::explorer_coset_strategy(z12, ElemSet(12, {0}), tg::sweep_walker_explorer(), tg::attractor_explorer());
  EXPECT_EQ(visits(z12, trivial, tg::optimal_director(tg::solve_exact(z12))), 8u);
  EXPECT_THROW(tg::explorer_coset_strategy(group("D3"), ElemSet(6, {0, 3}), tg::sweep_walker_explorer(),
                                           tg::attractor_explorer()),
               tg::Error);
}

TEST(PlayMatch, OptimalPlayAndSmallCases) {
  auto z9 = group("Z9");
  auto r = tg::solve_exact(z9);
  EXPECT_EQ(visits(z9, tg::optimal_explorer(r), tg::optimal_director(r)), 6u);
  auto z2 = group("Z2");
  tg::ExplorerStrategy name_one{"one", [] {
                                  struct P : tg::ExplorerPlayer {
                                    tg::ElemId choose(const tg::GameState&) override { return 1; }
                                  };
                                  return std::make_unique<P>();
                                }};
  auto t = tg::play_match(z2, 0, name_one, tg::random_director(3), 5);
  EXPECT_EQ(t.moves.size(), 1u);
  EXPECT_TRUE(t.final_visited.is_full());
  EXPECT_EQ(visits(group("D4"), tg::theoretical_explorer(group("D4")), tg::random_director(9)), 8u);
  EXPECT_THROW(tg::play_match(z2, 0, name_one, tg::random_director(3), 0), tg::Error);
}

TEST(PlayMatch, TranscriptsReplayAndAreDeterministic) {
  auto g = group("A4");
  auto a = tg::play_match(g, 0, tg::random_explorer(11), tg::random_director(12), 50);
  auto b = tg::play_match(g, 0, tg::random_explorer(11), tg::random_director(12), 50);
  EXPECT_EQ(a.moves, b.moves);
  auto s = tg::replay(g, 0, a.moves);
  EXPECT_EQ(s.visited, a.final_visited);
}

TEST(StrategyPairs, TheoreticalPlayersAchieveTheValue) {
  for (const auto& e : tg::catalog_up_to(16)) {
    auto g = tg::build(e.spec);
    auto solved = tg::solve_exact(g);
    const auto f = static_cast<std::size_t>(solved.f_value);
    EXPECT_EQ(visits(g, tg::theoretical_explorer(g), tg::optimal_director(solved)), f) << e.label;
    auto avoid = tg::director_avoid_strategy(g, tg::theoretical_avoid_set(g));
    EXPECT_EQ(visits(g, tg::optimal_explorer(solved), avoid), f) << e.label;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      EXPECT_GE(visits(g, tg::theoretical_explorer(g), tg::random_director(seed)), f) << e.label;
      EXPECT_GE(visits(g, tg::optimal_explorer(solved), tg::random_director(seed)), f) << e.label;
      EXPECT_LE(visits(g, tg::random_explorer(seed), tg::optimal_director(solved)), f) << e.label;
    }
  }
}
