#pragma once

#include <algorithm>
#include <deque>
#include <unordered_set>
#include <vector>

#include "budget.hpp"
#include "elem_set.hpp"
#include "error.hpp"
#include "group.hpp"

namespace twistgame {

inline ElemId power(const GroupTable& g, ElemId x, long long k) {
  if (k < 0) {
    x = g.inv(x);
    k = -k;
  }
  ElemId result = kIdentity;
  ElemId base = x;
  while (k > 0) {
    if (k & 1) result = g.mul(result, base);
    base = g.mul(base, base);
    k >>= 1;
  }
  return result;
}

inline std::size_t element_order(const GroupTable& g, ElemId x) {
  std::size_t k = 1;
  for (ElemId y = x; y != kIdentity; y = g.mul(y, x)) ++k;
  return k;
}

constexpr bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

namespace detail {

// Worklist closure. `closed` is already closed under `products`; every element
// of `fresh` not yet in it is added, then all pairs involving a newly added
// element are fed to `products(a, b, emit)` (both orders) until nothing new
// appears.
template <typename Products>
ElemSet grow_closure(ElemSet closed, const std::vector<ElemId>& fresh, Products&& products) {
  std::vector<ElemId> members = closed.members();
  std::deque<ElemId> queue;
  auto emit = [&](ElemId x) {
    if (closed.add(x)) {
      members.push_back(x);
      queue.push_back(x);
    }
  };
  for (ElemId x : fresh) emit(x);
  while (!queue.empty()) {
    ElemId a = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < members.size(); ++i) {
      ElemId b = members[i];
      products(a, b, emit);
      if (a != b) products(b, a, emit);
    }
  }
  return closed;
}

}  // namespace detail

inline bool is_subgroup(const GroupTable& g, const ElemSet& h) {
  if (!h.contains(kIdentity)) return false;
  bool ok = true;
  h.for_each([&](ElemId a) {
    if (!ok) return;
    h.for_each([&](ElemId b) {
      if (ok && !h.contains(g.mul(a, b))) ok = false;
    });
  });
  return ok;
}

// Extends a subgroup by extra generators.
inline ElemSet extend_subgroup(const GroupTable& g, const ElemSet& subgroup, const std::vector<ElemId>& extra) {
  return detail::grow_closure(subgroup, extra, [&](ElemId a, ElemId b, auto& emit) { emit(g.mul(a, b)); });
}

// Smallest subgroup containing `seed`.
inline ElemSet subgroup_closure(const GroupTable& g, const ElemSet& seed) {
  auto fresh = seed.members();
  fresh.insert(fresh.begin(), kIdentity);
  return extend_subgroup(g, g.empty_set(), fresh);
}

inline bool is_normal(const GroupTable& g, const ElemSet& h) {
  if (!is_subgroup(g, h)) fail(ErrorCode::NotASubgroup, "is_normal: " + h.to_string() + " is not a subgroup");
  for (ElemId x = 0; x < g.order(); ++x) {
    bool ok = true;
    h.for_each([&](ElemId y) {
      if (ok && !h.contains(g.mul(g.mul(x, y), g.inv(x)))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline ElemSet center(const GroupTable& g) {
  ElemSet z(g.order());
  for (ElemId a = 0; a < g.order(); ++a) {
    bool central = true;
    for (ElemId b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.insert(a);
  }
  return z;
}

namespace detail {

inline GroupSpec spec_of_table(const std::vector<ElemId>& mul, std::size_t n) {
  return table(static_cast<int>(n), std::vector<int>(mul.begin(), mul.end()));
}

}  // namespace detail

struct Quotient {
  GroupTable table;
  std::vector<ElemId> projection;  // element of G -> coset index
  std::vector<ElemId> reps;        // coset index -> smallest element of the coset
};

// G/N with cosets labelled by their smallest element, in increasing order.
inline Quotient quotient(const GroupTable& g, const ElemSet& normal) {
  if (!is_subgroup(g, normal)) fail(ErrorCode::NotNormal, "quotient: argument is not a subgroup");
  if (!is_normal(g, normal)) fail(ErrorCode::NotNormal, "quotient: subgroup is not normal");
  const std::size_t n = g.order();
  constexpr ElemId unset = static_cast<ElemId>(-1);
  std::vector<ElemId> proj(n, unset);
  std::vector<ElemId> reps;
  for (ElemId x = 0; x < n; ++x) {
    if (proj[x] != unset) continue;
    const auto q = static_cast<ElemId>(reps.size());
    reps.push_back(x);
    normal.for_each([&](ElemId k) { proj[g.mul(x, k)] = q; });
  }
  const std::size_t m = reps.size();
  std::vector<ElemId> mul(m * m);
  std::vector<std::string> names(m);
  for (std::size_t a = 0; a < m; ++a) {
    names[a] = g.name(reps[a]) + "N";
    for (std::size_t b = 0; b < m; ++b) mul[a * m + b] = proj[g.mul(reps[a], reps[b])];
  }
  auto spec = detail::spec_of_table(mul, m);
  return Quotient{GroupTable::from_table(m, std::move(mul), std::move(names), std::move(spec)), std::move(proj),
                  std::move(reps)};
}

struct Subgroup {
  GroupTable table;
  std::vector<ElemId> embedding;  // element of H -> element of G
};

// A subgroup as a group in its own right, elements in increasing order.
inline Subgroup subgroup_table(const GroupTable& g, const ElemSet& h) {
  if (!is_subgroup(g, h)) fail(ErrorCode::NotASubgroup, "subgroup_table: not a subgroup");
  auto elems = h.members();
  const std::size_t m = elems.size();
  std::vector<ElemId> local(g.order(), 0);
  for (std::size_t i = 0; i < m; ++i) local[elems[i]] = static_cast<ElemId>(i);
  std::vector<ElemId> mul(m * m);
  std::vector<std::string> names(m);
  for (std::size_t a = 0; a < m; ++a) {
    names[a] = g.name(elems[a]);
    for (std::size_t b = 0; b < m; ++b) mul[a * m + b] = local[g.mul(elems[a], elems[b])];
  }
  auto spec = detail::spec_of_table(mul, m);
  return Subgroup{GroupTable::from_table(m, std::move(mul), std::move(names), std::move(spec)), std::move(elems)};
}

// Ascending central series reaches G.
inline bool is_nilpotent(const GroupTable& g) {
  ElemSet z = g.singleton(kIdentity);
  for (;;) {
    if (z.is_full()) return true;
    auto q = quotient(g, z);
    auto zq = center(q.table);
    ElemSet next(g.order());
    for (ElemId x = 0; x < g.order(); ++x)
      if (zq.contains(q.projection[x])) next.insert(x);
    if (next == z) return false;
    z = std::move(next);
  }
}

// The unique y with y^2 = x in a group of odd order.
inline ElemId sqrt_odd(const GroupTable& g, ElemId x) {
  if (g.order() % 2 == 0) fail(ErrorCode::EvenOrderGroup, "sqrt_odd needs a group of odd order");
  return power(g, x, static_cast<long long>((element_order(g, x) + 1) / 2));
}

// Subgroup generated by the elements of 2-power order. Always normal with
// odd index; a violation means the table is broken.
inline ElemSet gamma_subgroup(const GroupTable& g) {
  ElemSet seed(g.order());
  for (ElemId x = 0; x < g.order(); ++x)
    if (is_power_of_two(element_order(g, x))) seed.insert(x);
  auto gamma = subgroup_closure(g, seed);
  if (!is_normal(g, gamma)) fail(ErrorCode::Internal, "gamma subgroup is not normal");
  if ((g.order() / gamma.size()) % 2 == 0) fail(ErrorCode::Internal, "gamma subgroup has even index");
  return gamma;
}

// All subgroups, grown from {e} by adding one generator at a time.
// Sorted by size, then member list.
inline std::vector<ElemSet> enumerate_subgroups(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  BudgetClock clock(budget);
  std::unordered_set<ElemSet, ElemSetHash> seen;
  std::vector<ElemSet> found{g.singleton(kIdentity)};
  seen.insert(found.front());
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (ElemId x = 0; x < g.order(); ++x) {
      if (found[head].contains(x)) continue;
      auto s = extend_subgroup(g, found[head], {x});
      if (seen.insert(s).second) {
        found.push_back(std::move(s));
        clock.check(found.size(), "enumerate_subgroups");
      }
    }
    if ((head & 63) == 0) clock.check(found.size(), "enumerate_subgroups");
  }
  std::sort(found.begin(), found.end(), set_order_less);
  return found;
}

inline std::vector<ElemSet> normal_subgroups(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  auto all = enumerate_subgroups(g, budget);
  std::erase_if(all, [&](const ElemSet& h) { return !is_normal(g, h); });
  return all;
}

}  // namespace twistgame
