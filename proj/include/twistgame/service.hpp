#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "catalog.hpp"
#include "error.hpp"
#include "game.hpp"
#include "group.hpp"
#include "solver.hpp"
#include "strategies.hpp"
#include "theory.hpp"
#include "twisted.hpp"

namespace twistgame {

enum class Role { Explorer, Director };

inline std::string to_string(Role r) { return r == Role::Explorer ? "explorer" : "director"; }

inline Role role_from_string(const std::string& s) {
  if (s == "explorer") return Role::Explorer;
  if (s == "director") return Role::Director;
  fail(ErrorCode::InvalidSpec, "human_role must be 'explorer' or 'director'");
}

inline const std::vector<std::string>& engine_labels() {
  static const std::vector<std::string> labels{"optimal", "theoretical", "random"};
  return labels;
}

// FNV-1a over "pos|visited-hex|phase|pending", printed as 16 hex digits.
inline std::string state_hash(const GameState& s) {
  std::string canon = std::to_string(s.pos) + "|" + s.visited.to_hex() + "|" +
                      (s.phase == Phase::AwaitExplorer ? "E" : "D") + "|" +
                      (s.phase == Phase::AwaitDirector ? std::to_string(s.pending) : "-");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

struct ServiceOptions {
  std::size_t max_sessions = 256;
  std::chrono::seconds idle_timeout{3600};
  std::size_t solver_cap = 16;
  std::function<std::chrono::steady_clock::time_point()> clock = [] { return std::chrono::steady_clock::now(); };
};

struct MoveRequest {
  std::optional<ElemId> explorer_element;
  std::optional<int> director_sign;
  std::size_t round = 0;
};

inline MoveRequest move_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidSpec, "move must be a JSON object");
  MoveRequest m;
  try {
    if (!j.contains("round") || !j.at("round").is_number_integer() || j.at("round").get<long long>() < 1)
      fail(ErrorCode::InvalidSpec, "move needs a positive integer 'round'");
    m.round = j.at("round").get<std::size_t>();
    if (j.contains("explorer_element")) {
      if (!j.at("explorer_element").is_number_integer() || j.at("explorer_element").get<long long>() < 0)
        fail(ErrorCode::IllegalElement, "explorer_element must be a non-negative integer");
      m.explorer_element = j.at("explorer_element").get<ElemId>();
    }
    if (j.contains("director_sign")) {
      if (!j.at("director_sign").is_number_integer()) fail(ErrorCode::InvalidSpec, "director_sign must be 1 or -1");
      m.director_sign = j.at("director_sign").get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidSpec, e.what());
  }
  if (m.explorer_element.has_value() == m.director_sign.has_value())
    fail(ErrorCode::InvalidSpec, "move needs exactly one of explorer_element, director_sign");
  return m;
}

// One interactive game. All access goes through SessionManager, which holds
// `mutex` for the duration of each request.
struct Session {
  std::string id;
  GroupSpec spec;
  GroupPtr group;
  Role human_role = Role::Explorer;
  std::string engine_requested;
  std::string engine;
  bool downgraded = false;
  std::uint64_t seed = 0;
  ElemId start = kIdentity;
  GameState state;
  std::vector<MoveRecord> moves;
  std::size_t max_rounds = 0;
  std::optional<ElemSet> avoid_set;  // engine Director's declared set
  std::optional<SolveResult> solved;
  std::unique_ptr<ExplorerPlayer> engine_explorer;
  std::unique_ptr<DirectorPlayer> engine_director;
  std::map<std::size_t, std::pair<MoveRequest, nlohmann::ordered_json>> responses;
  std::optional<TheoryReport> theory;
  std::chrono::system_clock::time_point created_at;
  std::chrono::steady_clock::time_point last_access;
  std::mutex mutex;

  bool game_over() const { return state.all_visited() || moves.size() >= max_rounds; }
  // The round the next human move belongs to.
  std::size_t current_round() const { return moves.size() + 1; }
};

class SessionManager {
public:
  explicit SessionManager(ServiceOptions opts = {}) : opts_(std::move(opts)), rng_(std::random_device{}()) {}

  const ServiceOptions& options() const { return opts_; }

  nlohmann::ordered_json groups() const {
    auto out = nlohmann::ordered_json::array();
    for (const auto& e : default_catalog())
      out.push_back({{"label", e.label}, {"order", e.order}, {"group_spec", to_json(e.spec)}});
    return out;
  }

  // `group` is a spec object or a catalog label.
  nlohmann::ordered_json create(const nlohmann::json& group, Role human, const std::string& engine,
                                std::optional<std::uint64_t> seed = std::nullopt) {
    if (std::find(engine_labels().begin(), engine_labels().end(), engine) == engine_labels().end())
      fail(ErrorCode::InvalidSpec, "engine must be one of optimal, theoretical, random");
    auto s = std::make_shared<Session>();
    s->spec = parse_group(group);
    s->group = build_shared(s->spec);
    const auto& g = *s->group;
    s->human_role = human;
    s->engine_requested = engine;
    s->engine = engine;
    if (engine == "optimal" && g.order() > std::min(opts_.solver_cap, kSolverHardCap)) {
      s->engine = "theoretical";
      s->downgraded = true;
    }
    s->max_rounds = 10 * g.order();
    s->created_at = std::chrono::system_clock::now();
    {
      std::lock_guard lock(mutex_);
      evict_idle_locked();
      if (sessions_.size() >= opts_.max_sessions)
        fail(ErrorCode::Capacity, "session cap of " + std::to_string(opts_.max_sessions) + " reached");
      s->id = fresh_id_locked();
      s->seed = seed ? *seed : rng_();
    }
    setup_engine(*s);
    s->state = GameState::start(g, s->start);
    if (human == Role::Director) s->state = apply_move(s->state, ExplorerMove{s->engine_explorer->choose(s->state)});
    s->last_access = opts_.clock();

    std::lock_guard lock(mutex_);
    if (sessions_.size() >= opts_.max_sessions)
      fail(ErrorCode::Capacity, "session cap of " + std::to_string(opts_.max_sessions) + " reached");
    sessions_.emplace(s->id, s);
    return view(*s);
  }

  nlohmann::ordered_json get(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    return view(*s);
  }

  nlohmann::ordered_json submit(const std::string& id, const MoveRequest& m) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    if (auto it = s->responses.find(m.round); it != s->responses.end()) {
      const auto& prev = it->second.first;
      if (prev.explorer_element == m.explorer_element && prev.director_sign == m.director_sign)
        return it->second.second;
      fail(ErrorCode::Conflict, "round " + std::to_string(m.round) + " was already played with a different move");
    }
    if (s->game_over()) fail(ErrorCode::WrongPhase, "the game is over");
    if (m.round != s->current_round())
      fail(ErrorCode::Conflict, "expected round " + std::to_string(s->current_round()) + ", got " +
                                    std::to_string(m.round));

    const auto& g = *s->group;
    nlohmann::ordered_json engine_move = nullptr;
    if (s->human_role == Role::Explorer) {
      if (!m.explorer_element) fail(ErrorCode::WrongPhase, "the human plays Explorer; send explorer_element");
      if (*m.explorer_element >= g.order()) fail(ErrorCode::IllegalElement, "element out of range");
      auto after = apply_move(s->state, ExplorerMove{*m.explorer_element});
      const Sign sign = s->engine_director->choose(after);
      record(*s, apply_move(after, DirectorMove{sign}), *m.explorer_element, sign);
      engine_move = {{"director_sign", to_int(sign)}};
    } else {
      if (!m.director_sign) fail(ErrorCode::WrongPhase, "the human plays Director; send director_sign");
      if (*m.director_sign != 1 && *m.director_sign != -1) fail(ErrorCode::InvalidSpec, "director_sign must be 1 or -1");
      const Sign sign = *m.director_sign == 1 ? Sign::Plus : Sign::Minus;
      const ElemId named = s->state.pending;
      record(*s, apply_move(s->state, DirectorMove{sign}), named, sign);
      if (!s->game_over()) {
        const ElemId next = s->engine_explorer->choose(s->state);
        s->state = apply_move(s->state, ExplorerMove{next});
        engine_move = {{"explorer_element", next}};
      }
    }
    check_replay(*s);
    auto out = view(*s);
    out["engine_move"] = engine_move;
    s->responses.emplace(m.round, std::make_pair(m, out));
    return out;
  }

  nlohmann::ordered_json analyze(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    const auto& g = *s->group;
    if (!s->theory) s->theory = f_theoretical(g);
    if (!s->solved && g.order() <= std::min(opts_.solver_cap, kSolverHardCap)) s->solved = solve_exact(g, s->start);

    using J = nlohmann::ordered_json;
    J a;
    a["session"] = s->id;
    a["order"] = g.order();
    a["f_star"] = s->theory->f_star;
    a["f_theory"] = s->theory->f_theory ? J(*s->theory->f_theory) : J(nullptr);
    a["f_oracle"] = s->solved ? J(s->solved->f_value) : J(nullptr);
    a["method"] = to_string(s->theory->method);
    a["lower_bound"] = s->theory->lower_bound;
    a["upper_bound"] = s->theory->upper_bound;
    a["visited_count"] = s->state.visited.size();
    const auto unvisited = s->state.unvisited();
    a["unvisited"] = unvisited.members();
    a["game_over"] = s->game_over();
    const bool disclose = s->human_role == Role::Explorer && s->engine == "theoretical";
    a["avoid_set"] = disclose && s->avoid_set ? J(s->avoid_set->members()) : J(nullptr);

    J dec = nullptr;
    if (!unvisited.empty())
      if (auto c = coset_decompose(g, unvisited))
        dec = {{"rep", c->rep}, {"core", c->core.members()}, {"core_is_subgroup", is_subgroup(g, c->core)}};
    a["unvisited_coset"] = dec;
    a["explorer_can_progress"] = !unvisited.empty() && explorer_attractor(g, unvisited).contains(s->state.pos);
    auto defendable = largest_defendable_coset(*s, unvisited);
    a["defendable_coset"] = defendable ? J(defendable->members()) : J(nullptr);
    return a;
  }

  std::size_t size() {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

  // Drops sessions idle for longer than the timeout; returns how many.
  std::size_t evict_idle() {
    std::lock_guard lock(mutex_);
    return evict_idle_locked();
  }

private:
  static GroupSpec parse_group(const nlohmann::json& j) {
    if (j.is_string()) {
      auto e = find_catalog_entry(j.get<std::string>());
      if (!e) fail(ErrorCode::InvalidSpec, "unknown catalog label '" + j.get<std::string>() + "'");
      return e->spec;
    }
    return spec_from_json(j);
  }

  void setup_engine(Session& s) {
    const auto& g = *s.group;
    if (s.engine == "optimal") {
      s.solved = solve_exact(g, s.start, SolverOptions{std::min(opts_.solver_cap, kSolverHardCap)});
      if (s.human_role == Role::Explorer) s.engine_director = optimal_director(*s.solved).make();
      else s.engine_explorer = optimal_explorer(*s.solved).make();
    } else if (s.engine == "theoretical") {
      if (s.human_role == Role::Explorer) {
        s.avoid_set = theoretical_avoid_set(g, s.start);
        s.engine_director = director_avoid_strategy(g, *s.avoid_set).make();
      } else {
        s.engine_explorer = theoretical_explorer(g).make();
      }
    } else {
      if (s.human_role == Role::Explorer) s.engine_director = random_director(s.seed).make();
      else s.engine_explorer = random_explorer(s.seed).make();
    }
  }

  static void record(Session& s, GameState next, ElemId element, Sign sign) {
    s.state = std::move(next);
    s.moves.push_back({s.moves.size() + 1, element, sign, s.state.pos});
  }

  // The served state must be the replay of the transcript, and a declared
  // avoid set must still be untouched.
  static void check_replay(const Session& s) {
    auto r = replay(*s.group, s.start, s.moves);
    if (r.pos != s.state.pos || !(r.visited == s.state.visited))
      fail(ErrorCode::Internal, "session state diverged from its transcript");
    if (s.avoid_set && !(r.visited & *s.avoid_set).empty())
      fail(ErrorCode::Internal, "engine Director let the token into its avoid set");
  }

  // Largest twisted coset of G/Gamma whose preimage lies in the unvisited
  // set and that the Director can still keep the token out of.
  static std::optional<ElemSet> largest_defendable_coset(const Session& s, const ElemSet& unvisited) {
    const auto& g = *s.group;
    auto gamma = gamma_subgroup(g);
    if (gamma.is_full() || unvisited.empty()) return std::nullopt;
    auto q = quotient(g, gamma);
    std::vector<ElemSet> twisted;
    try {
      twisted = enumerate_twisted_subgroups(q.table);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      return std::nullopt;
    }
    std::optional<ElemSet> best;
    for (const auto& t : twisted) {
      if (t.is_full()) continue;
      for (ElemId rep = 0; rep < q.table.order(); ++rep) {
        auto coset = translate(q.table, rep, t);
        ElemSet pre(g.order());
        for (ElemId x = 0; x < g.order(); ++x)
          if (coset.contains(q.projection[x])) pre.insert(x);
        if (!pre.is_subset_of(unvisited)) continue;
        if (best && (pre.size() < best->size() || (pre.size() == best->size() && !members_lex_less(pre, *best))))
          continue;
        if (solve_open_avoidable(g, pre, s.state.pos)) best = pre;
      }
    }
    return best;
  }

  nlohmann::ordered_json view(const Session& s) const {
    using J = nlohmann::ordered_json;
    const auto& g = *s.group;
    J moves = J::array();
    for (const auto& m : s.moves) moves.push_back(to_json(m));
    J j;
    j["id"] = s.id;
    j["group_spec"] = to_json(s.spec);
    j["order"] = g.order();
    j["element_names"] = g.names();
    j["human_role"] = to_string(s.human_role);
    j["engine"] = s.engine;
    j["engine_requested"] = s.engine_requested;
    j["downgraded"] = s.downgraded;
    j["seed"] = s.seed;
    j["start"] = s.start;
    j["round"] = s.current_round();
    j["max_rounds"] = s.max_rounds;
    j["phase"] = s.state.phase == Phase::AwaitExplorer ? "await_explorer" : "await_director";
    j["pos"] = s.state.pos;
    j["pending"] = s.state.phase == Phase::AwaitDirector ? J(s.state.pending) : J(nullptr);
    j["visited"] = s.state.visited.members();
    j["visited_mask"] = s.state.visited.to_hex();
    j["game_over"] = s.game_over();
    j["transcript"] = std::move(moves);
    j["state_hash"] = state_hash(s.state);
    return j;
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(mutex_);
    evict_idle_locked();
    auto it = sessions_.find(id);
    if (it == sessions_.end()) fail(ErrorCode::UnknownSession, "no session '" + id + "'");
    it->second->last_access = opts_.clock();
    return it->second;
  }

  std::size_t evict_idle_locked() {
    const auto now = opts_.clock();
    std::size_t dropped = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      if (now - it->second->last_access > opts_.idle_timeout) {
        it = sessions_.erase(it);
        ++dropped;
      } else {
        ++it;
      }
    }
    return dropped;
  }

  std::string fresh_id_locked() {
    static constexpr char digits[] = "0123456789abcdef";
    for (;;) {
      std::string id;
      for (int w = 0; w < 2; ++w) {
        auto v = rng_();
        for (int i = 0; i < 16; ++i, v >>= 4) id += digits[v & 0xf];
      }
      if (!sessions_.count(id)) return id;
    }
  }

  ServiceOptions opts_;
  std::mutex mutex_;
  std::mt19937_64 rng_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace twistgame
