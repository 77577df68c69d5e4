#pragma once

#include <bit>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "elem_set.hpp"
#include "error.hpp"
#include "game.hpp"
#include "group.hpp"
#include "group_ops.hpp"
#include "solver.hpp"
#include "twisted.hpp"

namespace twistgame {

// A player instance. Instances may keep per-game memory; the strategy that
// spawns them is an immutable, shareable description.
class ExplorerPlayer {
public:
  virtual ~ExplorerPlayer() = default;
  virtual ElemId choose(const GameState& s) = 0;
  // True when this player cannot force any further new visit from `s`.
  virtual bool exhausted(const GameState& s) const { return s.all_visited(); }
};

class DirectorPlayer {
public:
  virtual ~DirectorPlayer() = default;
  virtual Sign choose(const GameState& s) = 0;  // s.phase == AwaitDirector
};

struct ExplorerStrategy {
  std::string label;
  std::function<std::unique_ptr<ExplorerPlayer>()> make;
};

struct DirectorStrategy {
  std::string label;
  std::function<std::unique_ptr<DirectorPlayer>()> make;
};

namespace detail {

template <typename F>
class FnDirector : public DirectorPlayer {
public:
  explicit FnDirector(F f) : f_(std::move(f)) {}
  Sign choose(const GameState& s) override { return f_(s); }

private:
  F f_;
};

template <typename F>
DirectorStrategy stateless_director(std::string label, F f) {
  return {std::move(label), [f] { return std::make_unique<FnDirector<F>>(f); }};
}

}  // namespace detail

// ---- solver-backed strategies ----

class TableExplorer : public ExplorerPlayer {
public:
  explicit TableExplorer(std::shared_ptr<const ValueTable> t) : table_(std::move(t)) {}
  ElemId choose(const GameState& s) override { return table_explorer_move(*s.group, *table_, s.pos, s.visited); }
  bool exhausted(const GameState& s) const override {
    return table_value(*s.group, *table_, s.pos, s.visited) == static_cast<int>(s.visited.size());
  }

private:
  std::shared_ptr<const ValueTable> table_;
};

inline ExplorerStrategy optimal_explorer(const SolveResult& solved) {
  auto t = solved.table;
  return {"optimal", [t] { return std::make_unique<TableExplorer>(t); }};
}

inline DirectorStrategy optimal_director(const SolveResult& solved) {
  auto t = solved.table;
  return detail::stateless_director("optimal", [t](const GameState& s) {
    return table_director_sign(*s.group, *t, s.pos, s.visited, s.pending);
  });
}

// ---- random baselines ----

inline ExplorerStrategy random_explorer(std::uint64_t seed) {
  class Player : public ExplorerPlayer {
  public:
    explicit Player(std::uint64_t seed) : rng_(seed) {}
    ElemId choose(const GameState& s) override {
      return std::uniform_int_distribution<ElemId>(0, static_cast<ElemId>(s.group->order() - 1))(rng_);
    }

  private:
    std::mt19937_64 rng_;
  };
  return {"random", [seed] { return std::make_unique<Player>(seed); }};
}

inline DirectorStrategy random_director(std::uint64_t seed) {
  class Player : public DirectorPlayer {
  public:
    explicit Player(std::uint64_t seed) : rng_(seed) {}
    Sign choose(const GameState&) override { return (rng_() & 1u) ? Sign::Plus : Sign::Minus; }

  private:
    std::mt19937_64 rng_;
  };
  return {"random", [seed] { return std::make_unique<Player>(seed); }};
}

// ---- structural strategies ----

// Keeps the token out of a betweenness-closed set B: from x outside B, the
// replies x g and x g^-1 cannot both lie in B, since x is between them.
inline DirectorStrategy director_avoid_strategy(const GroupTable& g, const ElemSet& avoid) {
  if (!is_betweenness_closed(g, avoid))
    fail(ErrorCode::PreconditionViolated, "avoid set " + avoid.to_string() + " is not closed under betweenness");
  return detail::stateless_director("avoid", [avoid](const GameState& s) {
    return avoid.contains(s.step(s.pending, Sign::Plus)) ? Sign::Minus : Sign::Plus;
  });
}

// t, t^2, t^4, ..., t^(2^(k-1)) for t of order 2^k. Played in order and
// stopped on arrival, it carries the token from x to x t against any replies.
inline std::vector<ElemId> explorer_two_power_sweep(const GroupTable& g, ElemId t) {
  const std::size_t ord = element_order(g, t);
  if (!is_power_of_two(ord))
    fail(ErrorCode::OrderNotPowerOfTwo, "element of order " + std::to_string(ord) + " is not a 2-element");
  std::vector<ElemId> script;
  for (ElemId p = t; script.size() + 1 < std::bit_width(ord); p = g.mul(p, p)) script.push_back(p);
  return script;
}

// Visits every element of pos * Gamma by walking along 2-elements, each step
// executed as a two-power sweep.
class SweepWalker : public ExplorerPlayer {
public:
  ElemId choose(const GameState& s) override {
    prepare(*s.group);
    const auto& g = *s.group;
    if (!script_.empty() && s.pos != target_) {
      ElemId e = script_.front();
      script_.pop_front();
      return e;
    }
    script_.clear();
    ElemId t = next_step(s);
    if (t == kIdentity) return kIdentity;
    target_ = g.mul(s.pos, t);
    auto sweep = explorer_two_power_sweep(g, t);
    script_.assign(sweep.begin() + 1, sweep.end());
    return sweep.front();
  }

  bool exhausted(const GameState& s) const override {
    prepare(*s.group);
    bool done = true;
    gamma_.for_each([&](ElemId k) {
      if (done && !s.visited.contains(s.group->mul(s.pos, k))) done = false;
    });
    return done;
  }

private:
  void prepare(const GroupTable& g) const {
    if (group_ == &g) return;
    group_ = &g;
    gamma_ = gamma_subgroup(g);
    twos_.clear();
    for (ElemId x = 1; x < g.order(); ++x)
      if (is_power_of_two(element_order(g, x))) twos_.push_back(x);
  }

  // First 2-element on a shortest path (right multiplication) from pos to an
  // unvisited element of pos * Gamma; identity when none remains.
  ElemId next_step(const GameState& s) const {
    const auto& g = *s.group;
    constexpr ElemId none = std::numeric_limits<ElemId>::max();
    std::vector<ElemId> first(g.order(), none);
    std::deque<ElemId> queue{s.pos};
    first[s.pos] = kIdentity;
    while (!queue.empty()) {
      ElemId x = queue.front();
      queue.pop_front();
      if (!s.visited.contains(x)) return first[x];
      for (ElemId t : twos_) {
        ElemId y = g.mul(x, t);
        if (first[y] != none) continue;
        first[y] = x == s.pos ? t : first[x];
        queue.push_back(y);
      }
    }
    return kIdentity;
  }

  mutable const GroupTable* group_ = nullptr;
  mutable ElemSet gamma_;
  mutable std::vector<ElemId> twos_;
  std::deque<ElemId> script_;
  ElemId target_ = kIdentity;
};

inline ExplorerStrategy sweep_walker_explorer() {
  return {"two-power-walk", [] { return std::make_unique<SweepWalker>(); }};
}

// Open-game Explorer: aims at the unvisited set as a whole, choosing an
// element whose both replies drop to a lower attractor layer. Whatever set
// is left unvisited is one the Director could have declared, so this is
// optimal in the original game as well.
class AttractorExplorer : public ExplorerPlayer {
public:
  ElemId choose(const GameState& s) override {
    const auto& g = *s.group;
    auto layer = layers(s);
    const int here = layer[s.pos];
    if (here <= 0) return kIdentity;
    for (ElemId e = 0; e < g.order(); ++e) {
      int a = layer[g.mul(s.pos, e)], b = layer[g.mul(s.pos, g.inv(e))];
      if (a >= 0 && b >= 0 && a < here && b < here) return e;
    }
    return kIdentity;
  }

  bool exhausted(const GameState& s) const override { return layers(s)[s.pos] < 0; }

private:
  // Attractor layer of each element (0 = unvisited, -1 = outside).
  static std::vector<int> layers(const GameState& s) {
    const auto& g = *s.group;
    std::vector<int> layer(g.order(), -1);
    s.visited.complement().for_each([&](ElemId x) { layer[x] = 0; });
    for (int round = 1;; ++round) {
      std::vector<ElemId> added;
      for (ElemId x = 0; x < g.order(); ++x) {
        if (layer[x] >= 0) continue;
        for (ElemId e = 0; e < g.order(); ++e) {
          int a = layer[g.mul(x, e)], b = layer[g.mul(x, g.inv(e))];
          if (a >= 0 && a < round && b >= 0 && b < round) {
            added.push_back(x);
            break;
          }
        }
      }
      if (added.empty()) break;
      for (ElemId x : added) layer[x] = round;
    }
    return layer;
  }
};

inline ExplorerStrategy attractor_explorer() {
  return {"attractor", [] { return std::make_unique<AttractorExplorer>(); }};
}

// Explorer for G built from a K-strategy and a G/K-strategy, K normal: inside
// each coset x K play the K-game until it is exhausted, then make one move of
// the G/K-game (lifted through coset representatives).
inline ExplorerStrategy explorer_coset_strategy(const GroupTable& g, const ElemSet& k, ExplorerStrategy inner,
                                                ExplorerStrategy outer) {
  if (!is_subgroup(g, k) || !is_normal(g, k))
    fail(ErrorCode::NotNormal, "explorer_coset_strategy needs a normal subgroup");
  struct Shared {
    std::shared_ptr<const Subgroup> sub;
    std::shared_ptr<const Quotient> quot;
    std::vector<ElemId> local;  // G -> K index (only meaningful on K)
    ExplorerStrategy inner, outer;
  };
  auto shared = std::make_shared<Shared>();
  shared->sub = std::make_shared<const Subgroup>(subgroup_table(g, k));
  shared->quot = std::make_shared<const Quotient>(quotient(g, k));
  shared->local.assign(g.order(), 0);
  for (std::size_t i = 0; i < shared->sub->embedding.size(); ++i)
    shared->local[shared->sub->embedding[i]] = static_cast<ElemId>(i);
  shared->inner = std::move(inner);
  shared->outer = std::move(outer);

  class Player : public ExplorerPlayer {
  public:
    explicit Player(std::shared_ptr<const Shared> sh) : sh_(std::move(sh)), outer_(sh_->outer.make()) {}

    ElemId choose(const GameState& s) override {
      ElemId rep = coset_rep(s);
      if (!inner_ || rep != inner_rep_) {
        inner_ = sh_->inner.make();
        inner_rep_ = rep;
      }
      auto in = inner_state(s, rep);
      if (!inner_->exhausted(in)) return sh_->sub->embedding[inner_->choose(in)];
      return sh_->quot->reps[outer_->choose(outer_state(s))];
    }

    bool exhausted(const GameState& s) const override {
      auto probe = sh_->inner.make();
      return probe->exhausted(inner_state(s, coset_rep(s))) && outer_->exhausted(outer_state(s));
    }

  private:
    ElemId coset_rep(const GameState& s) const { return sh_->quot->reps[sh_->quot->projection[s.pos]]; }

    GameState inner_state(const GameState& s, ElemId rep) const {
      const auto& g = *s.group;
      const auto& kt = sh_->sub->table;
      const ElemId rinv = g.inv(rep);
      GameState in{&kt, sh_->local[g.mul(rinv, s.pos)], ElemSet(kt.order()), Phase::AwaitExplorer, kIdentity};
      for (ElemId k : sh_->sub->embedding) {
        ElemId x = g.mul(rep, k);
        if (s.visited.contains(x)) in.visited.insert(sh_->local[k]);
      }
      return in;
    }

    GameState outer_state(const GameState& s) const {
      const auto& qt = sh_->quot->table;
      GameState out{&qt, sh_->quot->projection[s.pos], ElemSet(qt.order()), Phase::AwaitExplorer, kIdentity};
      s.visited.for_each([&](ElemId x) { out.visited.insert(sh_->quot->projection[x]); });
      return out;
    }

    std::shared_ptr<const Shared> sh_;
    std::unique_ptr<ExplorerPlayer> outer_;
    std::unique_ptr<ExplorerPlayer> inner_;
    ElemId inner_rep_ = kIdentity;
  };

  std::string label = "coset(" + shared->inner.label + "|" + shared->outer.label + ")";
  return {std::move(label), [shared] { return std::make_unique<Player>(shared); }};
}

// The Explorer built from the reduction: two-power walks inside each coset
// of Gamma, attractor play on G/Gamma.
inline ExplorerStrategy theoretical_explorer(const GroupTable& g) {
  return explorer_coset_strategy(g, gamma_subgroup(g), sweep_walker_explorer(), attractor_explorer());
}

// Plays until the round cap or until every element is visited.
inline Transcript play_match(const GroupTable& g, ElemId start, const ExplorerStrategy& es,
                             const DirectorStrategy& ds, std::size_t max_rounds) {
  if (max_rounds < 1) fail(ErrorCode::PreconditionViolated, "max_rounds must be >= 1");
  auto explorer = es.make();
  auto director = ds.make();
  auto s = GameState::start(g, start);
  Transcript t;
  t.start = start;
  for (std::size_t round = 1; round <= max_rounds && !s.all_visited(); ++round) {
    ElemId e = explorer->choose(s);
    s = apply_move(s, ExplorerMove{e});
    Sign sign = director->choose(s);
    s = apply_move(s, DirectorMove{sign});
    t.moves.push_back({round, e, sign, s.pos});
  }
  t.final_visited = s.visited;
  return t;
}

}  // namespace twistgame
