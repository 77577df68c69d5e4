#pragma once

#include <bit>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "budget.hpp"
#include "error.hpp"
#include "group.hpp"
#include "group_ops.hpp"
#include "twisted.hpp"

namespace twistgame {

// Value on Z/nZ: n for powers of two, otherwise n(1 - 1/p) with p the
// smallest odd prime factor.
constexpr long long f_star(long long n) {
  if (n < 1) return 0;
  long long m = n;
  while (m % 2 == 0) m /= 2;
  if (m == 1) return n;
  long long p = 3;
  while (m % p != 0) p += 2;
  return n / p * (p - 1);
}

enum class Method { PowerOfTwoGroup, NilpotentShortcut, OddTwistedFormula, GammaReductionThenOdd, BoundsOnly };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::PowerOfTwoGroup: return "PowerOfTwoGroup";
    case Method::NilpotentShortcut: return "NilpotentShortcut";
    case Method::OddTwistedFormula: return "OddTwistedFormula";
    case Method::GammaReductionThenOdd: return "GammaReductionThenOdd";
    case Method::BoundsOnly: return "BoundsOnly";
  }
  return "?";
}

enum class ConjectureStatus { Holds, Fails, Skipped };

inline std::string to_string(ConjectureStatus s) {
  switch (s) {
    case ConjectureStatus::Holds: return "holds";
    case ConjectureStatus::Fails: return "fails";
    case ConjectureStatus::Skipped: return "skipped";
  }
  return "?";
}

struct ConjectureResult {
  ConjectureStatus status = ConjectureStatus::Skipped;
  // A size in one set but not the other.
  std::optional<std::size_t> witness;
  std::string note;
};

// Two guesses about L(G), the sizes of proper twisted subgroups of an
// odd-order G: that they are exactly the proper subgroup orders, or exactly
// the proper divisors of |G|.
struct ConjectureFlags {
  ConjectureResult subgroup_orders;
  ConjectureResult proper_divisors;
};

struct Bounds {
  long long lower = 0;
  long long upper = 0;
  bool pinned() const { return lower == upper; }
};

struct TheoryReport {
  std::size_t order = 0;
  std::size_t gamma_size = 0;
  std::size_t quotient_order = 0;
  long long f_star = 0;
  std::optional<long long> f_theory;
  long long lower_bound = 0;
  long long upper_bound = 0;
  bool bounds_pinned = false;
  Method method = Method::BoundsOnly;
  ConjectureFlags conjectures;
  std::string note;
};

inline std::size_t largest_proper_subgroup_order(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  std::size_t best = 0;
  for (const auto& h : enumerate_subgroups(g, budget))
    if (h.size() < g.order()) best = std::max(best, h.size());
  return best;
}

namespace detail {

inline Bounds odd_bounds(const GroupTable& q, const Budget& budget) {
  if (q.order() == 1) return {1, 1};
  const auto n = static_cast<long long>(q.order());
  return {f_star(n), n - static_cast<long long>(largest_proper_subgroup_order(q, budget))};
}

inline std::set<std::size_t> proper_sizes(const std::vector<ElemSet>& sets, std::size_t n) {
  std::set<std::size_t> out;
  for (const auto& s : sets)
    if (s.size() < n) out.insert(s.size());
  return out;
}

inline ConjectureResult compare_sizes(const std::set<std::size_t>& l, const std::set<std::size_t>& expected) {
  ConjectureResult r;
  if (l == expected) {
    r.status = ConjectureStatus::Holds;
    return r;
  }
  r.status = ConjectureStatus::Fails;
  for (auto s : l)
    if (!expected.count(s)) {
      r.witness = s;
      r.note = "twisted subgroup size " + std::to_string(s) + " not in the comparison set";
      return r;
    }
  for (auto s : expected)
    if (!l.count(s)) {
      r.witness = s;
      r.note = "no proper twisted subgroup of size " + std::to_string(s);
      return r;
    }
  return r;
}

inline ConjectureFlags conjectures_from(const GroupTable& g, const std::vector<ElemSet>& twisted,
                                        const std::vector<ElemSet>& subgroups) {
  const std::size_t n = g.order();
  auto l = proper_sizes(twisted, n);
  std::set<std::size_t> divisors;
  for (std::size_t d = 1; d < n; ++d)
    if (n % d == 0) divisors.insert(d);
  return {compare_sizes(l, proper_sizes(subgroups, n)), compare_sizes(l, divisors)};
}

}  // namespace detail

// Bounds on f(G): for odd order, f*(|G|) <= f(G) <= |G| - max proper
// subgroup order. In general the same chain is applied to G/Gamma and
// scaled by |Gamma|.
inline Bounds bounds(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  auto gamma = gamma_subgroup(g);
  if (gamma.size() == 1) return detail::odd_bounds(g, budget);
  auto q = quotient(g, gamma);
  auto b = detail::odd_bounds(q.table, budget);
  const auto scale = static_cast<long long>(gamma.size());
  return {b.lower * scale, b.upper * scale};
}

// Evidence about L(G) for odd-order G.
inline ConjectureFlags conjecture_checks(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  ConjectureFlags flags;
  if (g.order() % 2 == 0) {
    flags.subgroup_orders.note = flags.proper_divisors.note = "even order";
    return flags;
  }
  try {
    return detail::conjectures_from(g, enumerate_twisted_subgroups(g, budget), enumerate_subgroups(g, budget));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    flags.subgroup_orders.note = flags.proper_divisors.note = e.what();
    return flags;
  }
}

// f(G) from the structure theory: |Gamma| * f(G/Gamma), with f of the odd
// quotient given by its largest proper twisted subgroup (or f* when G is
// nilpotent). Falls back to the bounds when enumeration runs out of budget.
inline TheoryReport f_theoretical(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  TheoryReport r;
  r.order = g.order();
  r.f_star = f_star(static_cast<long long>(g.order()));
  auto gamma = gamma_subgroup(g);
  r.gamma_size = gamma.size();
  auto q = quotient(g, gamma);
  r.quotient_order = q.table.order();
  const auto scale = static_cast<long long>(r.gamma_size);
  const auto qn = static_cast<long long>(r.quotient_order);

  std::optional<std::vector<ElemSet>> q_subgroups;
  try {
    q_subgroups = enumerate_subgroups(q.table, budget);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  r.lower_bound = scale * f_star(qn);
  if (qn == 1) {
    r.upper_bound = scale;
  } else if (q_subgroups) {
    std::size_t best = 0;
    for (const auto& h : *q_subgroups)
      if (h.size() < q.table.order()) best = std::max(best, h.size());
    r.upper_bound = scale * (qn - static_cast<long long>(best));
  } else {
    r.upper_bound = static_cast<long long>(g.order());
  }
  r.bounds_pinned = r.lower_bound == r.upper_bound;

  if (gamma.is_full()) {
    r.method = std::has_single_bit(g.order()) ? Method::PowerOfTwoGroup : Method::GammaReductionThenOdd;
    r.f_theory = static_cast<long long>(g.order());
  } else if (is_nilpotent(g)) {
    r.method = Method::NilpotentShortcut;
    r.f_theory = r.f_star;
  } else {
    try {
      auto twisted = enumerate_twisted_subgroups(q.table, budget);
      auto best = detail::pick_max_proper(twisted, q.table.order());
      r.f_theory = scale * (qn - static_cast<long long>(best.size()));
      r.method = r.gamma_size == 1 ? Method::OddTwistedFormula : Method::GammaReductionThenOdd;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      r.method = Method::BoundsOnly;
      r.note = e.what();
      if (r.bounds_pinned) r.f_theory = r.lower_bound;
    }
  }

  if (g.order() % 2 == 1) r.conjectures = conjecture_checks(g, budget);
  else r.conjectures.subgroup_orders.note = r.conjectures.proper_divisors.note = "even order";
  return r;
}

// A betweenness-closed set of size |G| - f(G) avoiding `start`: the
// preimage of a largest proper twisted coset of G/Gamma. Empty when
// Gamma = G.
inline ElemSet theoretical_avoid_set(const GroupTable& g, ElemId start = kIdentity,
                                     const Budget& budget = Budget::from_env()) {
  auto gamma = gamma_subgroup(g);
  if (gamma.is_full()) return g.empty_set();
  auto q = quotient(g, gamma);
  auto core = max_proper_twisted(q.table, budget);
  const ElemId target = q.projection[start];
  for (ElemId rep = 0; rep < q.table.order(); ++rep) {
    auto coset = translate(q.table, rep, core);
    if (coset.contains(target)) continue;
    ElemSet out(g.order());
    for (ElemId x = 0; x < g.order(); ++x)
      if (coset.contains(q.projection[x])) out.insert(x);
    return out;
  }
  fail(ErrorCode::Internal, "no twisted coset avoids the start");
}

inline nlohmann::ordered_json to_json(const ConjectureResult& c) {
  nlohmann::ordered_json j{{"status", to_string(c.status)}};
  j["witness"] = c.witness ? nlohmann::ordered_json(*c.witness) : nlohmann::ordered_json(nullptr);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline nlohmann::ordered_json to_json(const ConjectureFlags& f) {
  return {{"L_equals_subgroup_orders", to_json(f.subgroup_orders)},
          {"L_equals_proper_divisors", to_json(f.proper_divisors)}};
}

inline nlohmann::ordered_json to_json(const TheoryReport& r) {
  nlohmann::ordered_json j{{"order", r.order},           {"gamma_size", r.gamma_size},
                           {"quotient_order", r.quotient_order}, {"f_star", r.f_star}};
  j["f_theory"] = r.f_theory ? nlohmann::ordered_json(*r.f_theory) : nlohmann::ordered_json(nullptr);
  j["lower_bound"] = r.lower_bound;
  j["upper_bound"] = r.upper_bound;
  j["bounds_pinned"] = r.bounds_pinned;
  j["method"] = to_string(r.method);
  j["conjecture_flags"] = to_json(r.conjectures);
  return j;
}

}  // namespace twistgame
