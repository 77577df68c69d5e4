#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "elem_set.hpp"
#include "error.hpp"
#include "game.hpp"
#include "group.hpp"
#include "twisted.hpp"

namespace twistgame {

struct SolverOptions {
  std::size_t max_order = 16;
};

inline constexpr std::size_t kSolverHardCap = 20;

// Exact values of every (position, visited) state whose visited set contains
// the start. Indexed by mask * n + pos.
class ValueTable {
public:
  using Mask = std::uint32_t;

  ValueTable(std::size_t n, ElemId start)
      : n_(n), start_(start), value_((std::size_t{1} << n) * n, 0), rank_((std::size_t{1} << n) * n, 0) {}

  std::size_t order() const noexcept { return n_; }
  ElemId start() const noexcept { return start_; }

  bool covers(ElemId pos, Mask mask) const noexcept {
    return ((mask >> start_) & 1u) && ((mask >> pos) & 1u);
  }
  int value(ElemId pos, Mask mask) const noexcept { return value_[std::size_t{mask} * n_ + pos]; }
  // Rounds the Explorer needs to secure `value` from here without leaving the
  // visited set unless it grows; 0 when nothing more can be forced.
  int rank(ElemId pos, Mask mask) const noexcept { return rank_[std::size_t{mask} * n_ + pos]; }

  void set(ElemId pos, Mask mask, int value, int rank) {
    value_[std::size_t{mask} * n_ + pos] = static_cast<std::uint8_t>(value);
    rank_[std::size_t{mask} * n_ + pos] = static_cast<std::uint8_t>(rank);
  }

private:
  std::size_t n_;
  ElemId start_;
  std::vector<std::uint8_t> value_;
  std::vector<std::uint8_t> rank_;
};

struct SolveResult {
  int f_value = 0;
  ElemSet optimal_unvisited;
  std::shared_ptr<const ValueTable> table;

  int value(ElemId pos, const ElemSet& visited) const {
    return table->value(pos, static_cast<ValueTable::Mask>(visited.mask()));
  }
};

namespace detail {

inline ValueTable::Mask to_mask(const ElemSet& s) { return static_cast<ValueTable::Mask>(s.mask()); }

inline ValueTable::Mask translate_mask(const GroupTable& g, ElemId by, ValueTable::Mask mask) {
  ValueTable::Mask out = 0;
  while (mask) {
    auto x = static_cast<ElemId>(std::countr_zero(mask));
    out |= ValueTable::Mask{1} << g.mul(by, x);
    mask &= mask - 1;
  }
  return out;
}

// Left translation maps plays to plays, so any state can be moved into the
// part of the table that contains the start.
inline std::pair<ElemId, ValueTable::Mask> normalize(const GroupTable& g, const ValueTable& t, ElemId pos,
                                                     ValueTable::Mask mask) {
  if (t.covers(pos, mask)) return {pos, mask};
  auto anchor = static_cast<ElemId>(std::countr_zero(mask));
  ElemId by = g.mul(t.start(), g.inv(anchor));
  return {g.mul(by, pos), translate_mask(g, by, mask)};
}

inline std::pair<int, int> reply_key(const ValueTable& t, ElemId q, ValueTable::Mask mask) {
  constexpr int kLeaves = 1 << 10;
  if ((mask >> q) & 1u) return {t.value(q, mask), -t.rank(q, mask)};
  return {t.value(q, mask | (ValueTable::Mask{1} << q)), kLeaves};
}

}  // namespace detail

// Explorer's move under the solved table: maximizes the worst reply by
// (value, progress), smallest element on ties. Progress means the visited
// set grows or the rank drops, so following it never stalls.
inline ElemId table_explorer_move(const GroupTable& g, const ValueTable& t, ElemId pos, const ElemSet& visited) {
  auto [p, mask] = detail::normalize(g, t, pos, detail::to_mask(visited));
  ElemId best = kIdentity;
  std::pair<int, int> best_key{-1, 0};
  for (ElemId e = 0; e < g.order(); ++e) {
    auto k1 = detail::reply_key(t, g.mul(p, e), mask);
    auto k2 = detail::reply_key(t, g.mul(p, g.inv(e)), mask);
    auto worst = std::min(k1, k2);
    if (worst > best_key) {
      best_key = worst;
      best = e;
    }
  }
  return best;
}

// Director's reply minimizing the resulting value; +1 on ties.
inline Sign table_director_sign(const GroupTable& g, const ValueTable& t, ElemId pos, const ElemSet& visited,
                                ElemId named) {
  auto [p, mask] = detail::normalize(g, t, pos, detail::to_mask(visited));
  auto value_after = [&](ElemId q) {
    auto m = mask | (ValueTable::Mask{1} << q);
    return t.value(q, m);
  };
  int plus = value_after(g.mul(p, named));
  int minus = value_after(g.mul(p, g.inv(named)));
  return minus < plus ? Sign::Minus : Sign::Plus;
}

inline int table_value(const GroupTable& g, const ValueTable& t, ElemId pos, const ElemSet& visited) {
  auto [p, mask] = detail::normalize(g, t, pos, detail::to_mask(visited));
  return t.value(p, mask);
}

// Exact value of the game from `start` under mutual optimal play.
//
// Visited sets are processed in decreasing numeric order, so every strict
// superset is solved first. Within a fixed set V the Explorer's problem is a
// reachability game: starting from |V| (the payoff of staying inside V
// forever), values are raised by synchronous rounds
//   val(q) = max(|V|, max_g min_sign step(q, g, sign))
// where moves leaving V read the solved table. The least fixpoint is reached
// after at most |V| rounds; the round at which a value last rose is its rank.
inline SolveResult solve_exact(const GroupTable& g, ElemId start = kIdentity, const SolverOptions& opts = {}) {
  const std::size_t n = g.order();
  if (n > std::min(opts.max_order, kSolverHardCap))
    fail(ErrorCode::OrderTooLarge, "solve_exact: |G| = " + std::to_string(n) + " exceeds solver cap " +
                                       std::to_string(std::min(opts.max_order, kSolverHardCap)));
  if (start >= n) fail(ErrorCode::IllegalElement, "start out of range");
  using Mask = ValueTable::Mask;

  // Distinct reply pairs per position (g and g^-1 give the same pair).
  std::vector<std::vector<std::pair<ElemId, ElemId>>> replies(n);
  for (ElemId q = 0; q < n; ++q)
    for (ElemId e = 0; e < n; ++e)
      if (g.inv(e) >= e) replies[q].emplace_back(g.mul(q, e), g.mul(q, g.inv(e)));

  auto table = std::make_shared<ValueTable>(n, start);
  const Mask full = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
  const Mask start_bit = Mask{1} << start;
  std::vector<int> cur(n), next(n), rank(n);
  std::vector<ElemId> members;
  members.reserve(n);

  for (Mask mask = full;; --mask) {
    if (mask & start_bit) {
      members.clear();
      for (Mask m = mask; m; m &= m - 1) members.push_back(static_cast<ElemId>(std::countr_zero(m)));
      const int size = static_cast<int>(members.size());
      for (ElemId q : members) {
        cur[q] = size;
        rank[q] = 0;
      }
      auto step = [&](ElemId q) {
        if ((mask >> q) & 1u) return cur[q];
        return table->value(q, mask | (Mask{1} << q));
      };
      for (int round = 1;; ++round) {
        bool changed = false;
        for (ElemId q : members) {
          int best = cur[q];
          for (auto [a, b] : replies[q]) best = std::max(best, std::min(step(a), step(b)));
          next[q] = best;
          if (best > cur[q]) {
            rank[q] = round;
            changed = true;
          }
        }
        for (ElemId q : members) cur[q] = next[q];
        if (!changed) break;
      }
      for (ElemId q : members) table->set(q, mask, cur[q], rank[q]);
    }
    if (mask == start_bit) break;
  }

  SolveResult result;
  result.f_value = table->value(start, start_bit);
  result.table = table;

  // Witness: both sides follow the table until no further visit can be forced.
  auto state = GameState::start(g, start);
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 64 * n * n) fail(ErrorCode::Internal, "optimal play did not settle");
    const Mask mask = detail::to_mask(state.visited);
    if (table->value(state.pos, mask) == std::popcount(mask)) break;
    ElemId e = table_explorer_move(g, *table, state.pos, state.visited);
    Sign s = table_director_sign(g, *table, state.pos, state.visited, e);
    state = apply_move(apply_move(state, ExplorerMove{e}), DirectorMove{s});
  }
  if (static_cast<int>(state.visited.size()) != result.f_value)
    fail(ErrorCode::Internal, "optimal play visited " + std::to_string(state.visited.size()) + " not " +
                                  std::to_string(result.f_value));
  result.optimal_unvisited = state.unvisited();
  return result;
}

// Explorer-attractor of `target`: positions from which the Explorer can force
// the token into `target` whatever the Director answers.
inline ElemSet explorer_attractor(const GroupTable& g, const ElemSet& target) {
  ElemSet attr = target;
  bool changed = true;
  while (changed) {
    changed = false;
    for (ElemId x = 0; x < g.order(); ++x) {
      if (attr.contains(x)) continue;
      auto r = g.row(x);
      for (ElemId e = 0; e < g.order(); ++e) {
        if (attr.contains(r[e]) && attr.contains(r[g.inv(e)])) {
          attr.insert(x);
          changed = true;
          break;
        }
      }
    }
  }
  return attr;
}

// Director can keep the token out of U forever, starting from `start`.
inline bool solve_open_avoidable(const GroupTable& g, const ElemSet& avoid, ElemId start = kIdentity) {
  return !explorer_attractor(g, avoid).contains(start);
}

namespace detail {

// Bitmask attractor for |G| <= 64; pair_masks[x] lists the reply pairs at x.
class MaskAttractor {
public:
  explicit MaskAttractor(const GroupTable& g) : n_(g.order()), pairs_(g.order()) {
    for (ElemId x = 0; x < n_; ++x)
      for (ElemId e = 0; e < n_; ++e)
        if (g.inv(e) >= e)
          pairs_[x].push_back((std::uint64_t{1} << g.mul(x, e)) | (std::uint64_t{1} << g.mul(x, g.inv(e))));
  }

  std::uint64_t attractor(std::uint64_t target) const {
    std::uint64_t attr = target;
    bool changed = true;
    while (changed) {
      changed = false;
      for (ElemId x = 0; x < n_; ++x) {
        if ((attr >> x) & 1u) continue;
        for (auto p : pairs_[x])
          if ((p & attr) == p) {
            attr |= std::uint64_t{1} << x;
            changed = true;
            break;
          }
      }
    }
    return attr;
  }

private:
  std::size_t n_;
  std::vector<std::vector<std::uint64_t>> pairs_;
};

}  // namespace detail

enum class TildeMethod { Exhaustive, Structural };

// |G| minus the largest set the Director can declare and still avoid.
// Exhaustive: every subset, checked by the attractor (|G| <= 20).
// Structural (odd order): the largest twisted coset avoiding the start.
inline int tilde_f(const GroupTable& g, ElemId start = kIdentity, TildeMethod method = TildeMethod::Exhaustive,
                   const Budget& budget = Budget::from_env()) {
  const std::size_t n = g.order();
  if (method == TildeMethod::Structural) {
    if (n % 2 == 0) fail(ErrorCode::EvenOrderGroup, "structural tilde_f needs a group of odd order");
    if (n == 1) return 1;
    return static_cast<int>(n - max_proper_twisted(g, budget).size());
  }
  if (n > kSolverHardCap) fail(ErrorCode::OrderTooLarge, "exhaustive tilde_f limited to |G| <= 20");
  detail::MaskAttractor attractor(g);
  const std::uint64_t start_bit = std::uint64_t{1} << start;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  int best = 0;
  for (std::uint64_t u = 0; u <= full; ++u) {
    if (u & start_bit) continue;
    int sz = std::popcount(u);
    if (sz <= best) continue;
    if (!((attractor.attractor(u) >> start) & 1u)) best = sz;
  }
  return static_cast<int>(n) - best;
}

// Every inclusion-maximal avoidable set from `start` (|G| <= 20).
inline std::vector<ElemSet> maximal_avoidable_sets(const GroupTable& g, ElemId start = kIdentity) {
  const std::size_t n = g.order();
  if (n > kSolverHardCap) fail(ErrorCode::OrderTooLarge, "maximal_avoidable_sets limited to |G| <= 20");
  detail::MaskAttractor attractor(g);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<char> avoidable(std::size_t{1} << n, 0);
  for (std::uint64_t u = 0; u <= full; ++u)
    avoidable[u] = !((attractor.attractor(u) >> start) & 1u);
  std::vector<ElemSet> out;
  for (std::uint64_t u = 0; u <= full; ++u) {
    if (!avoidable[u]) continue;
    bool maximal = true;
    for (std::size_t x = 0; x < n && maximal; ++x)
      if (!((u >> x) & 1u) && avoidable[u | (std::uint64_t{1} << x)]) maximal = false;
    if (maximal) out.push_back(ElemSet::from_mask(n, u));
  }
  return out;
}

}  // namespace twistgame
