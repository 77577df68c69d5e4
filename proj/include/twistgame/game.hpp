#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "elem_set.hpp"
#include "error.hpp"
#include "group.hpp"

namespace twistgame {

enum class Phase { AwaitExplorer, AwaitDirector };

enum class Sign : int { Plus = 1, Minus = -1 };

inline int to_int(Sign s) { return static_cast<int>(s); }

struct ExplorerMove {
  ElemId element;
};
struct DirectorMove {
  Sign sign;
};

// Token position, visited set and whose turn it is. The group is borrowed
// and must outlive the state.
struct GameState {
  const GroupTable* group = nullptr;
  ElemId pos = kIdentity;
  ElemSet visited;
  Phase phase = Phase::AwaitExplorer;
  ElemId pending = kIdentity;  // meaningful in AwaitDirector only

  static GameState start(const GroupTable& g, ElemId at = kIdentity) {
    if (at >= g.order()) fail(ErrorCode::IllegalElement, "start position out of range");
    return GameState{&g, at, g.singleton(at), Phase::AwaitExplorer, kIdentity};
  }

  bool all_visited() const { return visited.is_full(); }
  ElemSet unvisited() const { return visited.complement(); }

  // Position after the Director answers `g` with `s` from here.
  ElemId step(ElemId g, Sign s) const {
    return group->mul(pos, s == Sign::Plus ? g : group->inv(g));
  }
};

inline GameState apply_move(const GameState& s, ExplorerMove m) {
  if (s.phase != Phase::AwaitExplorer) fail(ErrorCode::WrongPhase, "it is the Director's turn");
  if (m.element >= s.group->order()) fail(ErrorCode::IllegalElement, "element out of range");
  GameState next = s;
  next.phase = Phase::AwaitDirector;
  next.pending = m.element;
  return next;
}

inline GameState apply_move(const GameState& s, DirectorMove m) {
  if (s.phase != Phase::AwaitDirector) fail(ErrorCode::WrongPhase, "it is the Explorer's turn");
  GameState next = s;
  next.pos = s.step(s.pending, m.sign);
  next.visited.insert(next.pos);
  next.phase = Phase::AwaitExplorer;
  next.pending = kIdentity;
  return next;
}

struct MoveRecord {
  std::size_t round = 0;  // 1-based
  ElemId explorer_element = kIdentity;
  Sign director_sign = Sign::Plus;
  ElemId new_pos = kIdentity;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct Transcript {
  ElemId start = kIdentity;
  std::vector<MoveRecord> moves;
  ElemSet final_visited;
};

// Replays a transcript from its start; throws if a record disagrees with
// the positions the moves produce.
inline GameState replay(const GroupTable& g, ElemId start, const std::vector<MoveRecord>& moves) {
  auto s = GameState::start(g, start);
  for (const auto& m : moves) {
    s = apply_move(apply_move(s, ExplorerMove{m.explorer_element}), DirectorMove{m.director_sign});
    if (s.pos != m.new_pos) fail(ErrorCode::Internal, "transcript record disagrees with replay");
  }
  return s;
}

inline nlohmann::ordered_json to_json(const MoveRecord& m) {
  return {{"round", m.round},
          {"explorer_element", m.explorer_element},
          {"director_sign", to_int(m.director_sign)},
          {"new_pos", m.new_pos}};
}

inline nlohmann::ordered_json to_json(const Transcript& t) {
  auto moves = nlohmann::ordered_json::array();
  for (const auto& m : t.moves) moves.push_back(to_json(m));
  return {{"start", t.start}, {"moves", std::move(moves)}, {"final_visited", t.final_visited.members()},
          {"final_visited_mask", t.final_visited.to_hex()}};
}

}  // namespace twistgame
