#include <gtest/gtest.h>

#include "twistgame/catalog.hpp"
#include "twistgame/game.hpp"

namespace tg = twistgame;
using tg::ElemSet;

TEST(Game, ExplorerThenDirector) {
  auto g = tg::build(tg::cyclic(5));
  auto s = tg::GameState::start(g);
  s = tg::apply_move(s, tg::ExplorerMove{2});
  EXPECT_EQ(s.phase, tg::Phase::AwaitDirector);
  EXPECT_EQ(s.pending, 2u);
  s = tg::apply_move(s, tg::DirectorMove{tg::Sign::Plus});
  EXPECT_EQ(s.pos, 2u);
  EXPECT_EQ(s.visited, ElemSet(5, {0, 2}));
  s = tg::apply_move(tg::apply_move(s, tg::ExplorerMove{1}), tg::DirectorMove{tg::Sign::Minus});
  EXPECT_EQ(s.pos, 1u);
  EXPECT_EQ(s.visited.size(), 3u);
}

TEST(Game, IdentityAndInvolutionsForceTheMove) {
  auto g = tg::build(tg::dihedral(4));
  auto s = tg::GameState::start(g, 3);
  for (auto sign : {tg::Sign::Plus, tg::Sign::Minus}) {
    auto after = tg::apply_move(tg::apply_move(s, tg::ExplorerMove{0}), tg::DirectorMove{sign});
    EXPECT_EQ(after.pos, 3u);
    auto flip = tg::apply_move(tg::apply_move(s, tg::ExplorerMove{4}), tg::DirectorMove{sign});
    EXPECT_EQ(flip.pos, g.mul(3, 4));
  }
}

TEST(Game, PhaseAndRangeErrors) {
  auto g = tg::build(tg::cyclic(5));
  auto s = tg::GameState::start(g);
  try {
    tg::apply_move(s, tg::DirectorMove{tg::Sign::Plus});
    FAIL();
  } catch (const tg::Error& e) {
    EXPECT_EQ(e.code(), tg::ErrorCode::WrongPhase);
  }
  auto pending = tg::apply_move(s, tg::ExplorerMove{1});
  EXPECT_THROW(tg::apply_move(pending, tg::ExplorerMove{1}), tg::Error);
  try {
    tg::apply_move(s, tg::ExplorerMove{5});
    FAIL();
  } catch (const tg::Error& e) {
    EXPECT_EQ(e.code(), tg::ErrorCode::IllegalElement);
  }
  EXPECT_THROW(tg::GameState::start(g, 9), tg::Error);
}

TEST(Game, VisitedNeverShrinks) {
  auto g = tg::build(tg::find_catalog_entry("A4")->spec);
  auto s = tg::GameState::start(g);
  for (tg::ElemId round = 0; round < 40; ++round) {
    auto before = s.visited;
    s = tg::apply_move(tg::apply_move(s, tg::ExplorerMove{(round * 7) % 12}),
                       tg::DirectorMove{round % 3 ? tg::Sign::Plus : tg::Sign::Minus});
    EXPECT_TRUE(before.is_subset_of(s.visited));
    EXPECT_TRUE(s.visited.contains(s.pos));
  }
}

TEST(Transcript, ReplayAndJson) {
  auto g = tg::build(tg::cyclic(8));
  std::vector<tg::MoveRecord> moves{{1, 3, tg::Sign::Plus, 3}, {2, 1, tg::Sign::Minus, 2}};
  auto s = tg::replay(g, 0, moves);
  EXPECT_EQ(s.pos, 2u);
  EXPECT_EQ(s.visited, ElemSet(8, {0, 2, 3}));
  moves[1].new_pos = 4;
  EXPECT_THROW(tg::replay(g, 0, moves), tg::Error);

  tg::Transcript t{0, {{1, 3, tg::Sign::Minus, 5}}, ElemSet(8, {0, 5})};
  auto j = tg::to_json(t);
  EXPECT_EQ(j["moves"][0]["director_sign"], -1);
  EXPECT_EQ(j["moves"][0]["new_pos"], 5);
  EXPECT_EQ(j["final_visited_mask"], "21");
}
