#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "budget.hpp"
#include "elem_set.hpp"
#include "error.hpp"
#include "group.hpp"
#include "group_ops.hpp"

namespace twistgame {

// A left translate rep * core of a twisted subgroup.
struct TwistedCoset {
  ElemId rep = kIdentity;
  ElemSet core;

  friend bool operator==(const TwistedCoset&, const TwistedCoset&) = default;
};

// g * S
inline ElemSet translate(const GroupTable& g, ElemId by, const ElemSet& s) {
  ElemSet out(g.order());
  s.for_each([&](ElemId x) { out.insert(g.mul(by, x)); });
  return out;
}

inline ElemSet members_of(const GroupTable& g, const TwistedCoset& c) { return translate(g, c.rep, c.core); }

// Contains the identity and a*b*a for all members a, b.
inline bool is_twisted_subgroup(const GroupTable& g, const ElemSet& s) {
  if (!s.contains(kIdentity)) return false;
  auto m = s.members();
  for (ElemId a : m)
    for (ElemId b : m)
      if (!s.contains(g.mul(g.mul(a, b), a))) return false;
  return true;
}

// Extends a twisted subgroup by extra elements and re-closes under (a, b) -> aba.
inline ElemSet extend_twisted(const GroupTable& g, const ElemSet& closed, const std::vector<ElemId>& extra) {
  return detail::grow_closure(closed, extra, [&](ElemId a, ElemId b, auto& emit) { emit(g.mul(g.mul(a, b), a)); });
}

inline ElemSet twisted_closure(const GroupTable& g, const ElemSet& seed) {
  auto fresh = seed.members();
  fresh.insert(fresh.begin(), kIdentity);
  return extend_twisted(g, g.empty_set(), fresh);
}

// Every twisted subgroup of G, including {e} and G. Each one is reached by
// adding its elements one at a time to a smaller closure, so the search is
// complete. Sorted by size, then member list.
inline std::vector<ElemSet> enumerate_twisted_subgroups(const GroupTable& g,
                                                        const Budget& budget = Budget::from_env()) {
  BudgetClock clock(budget);
  std::unordered_set<ElemSet, ElemSetHash> seen;
  std::vector<ElemSet> found{g.singleton(kIdentity)};
  seen.insert(found.front());
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (ElemId x = 0; x < g.order(); ++x) {
      if (found[head].contains(x)) continue;
      auto s = extend_twisted(g, found[head], {x});
      if (seen.insert(s).second) {
        found.push_back(std::move(s));
        if ((found.size() & 255) == 0) clock.check(found.size(), "enumerate_twisted_subgroups");
      }
    }
    if ((head & 63) == 0) clock.check(found.size(), "enumerate_twisted_subgroups");
  }
  clock.check(found.size(), "enumerate_twisted_subgroups");
  std::sort(found.begin(), found.end(), set_order_less);
  return found;
}

namespace detail {

inline ElemSet pick_max_proper(const std::vector<ElemSet>& all, std::size_t n) {
  const ElemSet* best = nullptr;
  for (const auto& t : all) {
    if (t.size() == n) continue;
    if (!best || t.size() > best->size() || (t.size() == best->size() && members_lex_less(t, *best))) best = &t;
  }
  return *best;
}

}  // namespace detail

// Largest proper twisted subgroup; ties go to the lexicographically
// smallest member list.
inline ElemSet max_proper_twisted(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  if (g.order() < 2) fail(ErrorCode::PreconditionViolated, "max_proper_twisted needs |G| >= 2");
  return detail::pick_max_proper(enumerate_twisted_subgroups(g, budget), g.order());
}

// Sizes of the proper twisted subgroups.
inline std::set<std::size_t> L_set(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  std::set<std::size_t> sizes;
  for (const auto& t : enumerate_twisted_subgroups(g, budget))
    if (t.size() < g.order()) sizes.insert(t.size());
  return sizes;
}

// All b with b c^-1 b = a.
inline ElemSet between_set(const GroupTable& g, ElemId a, ElemId c) {
  ElemSet out(g.order());
  const ElemId ci = g.inv(c);
  for (ElemId b = 0; b < g.order(); ++b)
    if (g.mul(g.mul(b, ci), b) == a) out.insert(b);
  return out;
}

// The unique element between a and c when |G| is odd: c * sqrt(c^-1 a).
inline ElemId between_odd(const GroupTable& g, ElemId a, ElemId c) {
  if (g.order() % 2 == 0) fail(ErrorCode::EvenOrderGroup, "between_odd needs a group of odd order");
  return g.mul(c, sqrt_odd(g, g.mul(g.inv(c), a)));
}

namespace detail {

template <typename Emit>
void emit_between(const GroupTable& g, ElemId a, ElemId c, Emit& emit) {
  if (g.order() % 2 == 1) {
    emit(between_odd(g, a, c));
  } else {
    between_set(g, a, c).for_each([&](ElemId b) { emit(b); });
  }
}

}  // namespace detail

inline bool is_betweenness_closed(const GroupTable& g, const ElemSet& b) {
  auto m = b.members();
  for (ElemId a : m)
    for (ElemId c : m)
      if (!between_set(g, a, c).is_subset_of(b)) return false;
  return true;
}

// Least superset of `seed` containing every element between two members.
inline ElemSet betweenness_closure(const GroupTable& g, const ElemSet& seed) {
  return detail::grow_closure(g.empty_set(), seed.members(),
                              [&](ElemId a, ElemId c, auto& emit) { detail::emit_between(g, a, c, emit); });
}

// B = rep * P with P twisted, using the smallest rep in B that works.
inline std::optional<TwistedCoset> coset_decompose(const GroupTable& g, const ElemSet& b) {
  for (ElemId a : b.members()) {
    auto core = translate(g, g.inv(a), b);
    if (is_twisted_subgroup(g, core)) return TwistedCoset{a, std::move(core)};
  }
  return std::nullopt;
}

// Every twisted subgroup of an odd-order group has size dividing |G|.
inline bool verify_glauberman(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  if (g.order() % 2 == 0) fail(ErrorCode::EvenOrderGroup, "verify_glauberman needs a group of odd order");
  for (const auto& t : enumerate_twisted_subgroups(g, budget))
    if (g.order() % t.size() != 0) return false;
  return true;
}

}  // namespace twistgame
