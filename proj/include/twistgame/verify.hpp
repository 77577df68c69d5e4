#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catalog.hpp"
#include "census.hpp"
#include "error.hpp"
#include "group.hpp"
#include "group_ops.hpp"
#include "solver.hpp"
#include "strategies.hpp"
#include "theory.hpp"
#include "twisted.hpp"

namespace twistgame {

struct ClaimResult {
  std::string scope;
  std::string claim;
  bool passed = true;
  std::size_t checked = 0;
  std::string counterexample;  // empty when passed
};

struct VerifyReport {
  std::vector<ClaimResult> claims;
  bool passed() const {
    for (const auto& c : claims)
      if (!c.passed) return false;
    return true;
  }
};

inline const std::vector<std::string>& verify_scopes() {
  static const std::vector<std::string> scopes{"thm1",   "thm2",   "thm3",  "thm4",  "lemma1",
                                               "lemma2", "lemma3", "prop1", "prop2", "sec5"};
  return scopes;
}

// Every reply sequence to the sweep script for t, started at x, passes
// through x t. Returns false on the first sequence that does not.
inline bool sweep_reaches_all(const GroupTable& g, ElemId x, ElemId t) {
  const auto script = explorer_two_power_sweep(g, t);
  const ElemId target = g.mul(x, t);
  const std::size_t k = script.size();
  for (std::uint64_t replies = 0; replies < (std::uint64_t{1} << k); ++replies) {
    ElemId pos = x;
    for (std::size_t i = 0; i < k && pos != target; ++i)
      pos = g.mul(pos, (replies >> i) & 1u ? g.inv(script[i]) : script[i]);
    if (pos != target) return false;
  }
  return true;
}

namespace detail {

class Checker {
public:
  Checker(std::string scope, std::string claim) { r_.scope = std::move(scope), r_.claim = std::move(claim); }
  // Records one check; keeps the first failure.
  void expect(bool ok, const std::function<std::string()>& describe) {
    ++r_.checked;
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.counterexample = describe();
    }
  }
  ClaimResult done() { return std::move(r_); }

private:
  ClaimResult r_;
};

// Solved values are reused across claims within one report.
class SolveCache {
public:
  int f(const CatalogEntry& e) {
    auto it = cache_.find(e.label);
    if (it != cache_.end()) return it->second;
    int v = solve_exact(build(e.spec)).f_value;
    cache_.emplace(e.label, v);
    return v;
  }

private:
  std::map<std::string, int> cache_;
};

inline std::vector<CatalogEntry> entries(std::initializer_list<const char*> labels) {
  std::vector<CatalogEntry> out;
  for (const char* l : labels) out.push_back(*find_catalog_entry(l));
  return out;
}

inline ClaimResult verify_thm1() {
  Checker c("thm1", "optimal unvisited set is a coset of a proper twisted subgroup; f = |G| - max proper twisted");
  for (const auto& e : entries({"Z3", "Z5", "Z7", "Z9", "Z11", "Z13", "Z15", "Z3xZ3"})) {
    auto g = build(e.spec);
    auto solved = solve_exact(g);
    auto dec = coset_decompose(g, solved.optimal_unvisited);
    c.expect(dec && is_twisted_subgroup(g, dec->core) && dec->core.size() < g.order(),
             [&] { return e.label + ": unvisited " + solved.optimal_unvisited.to_string() + " is not a twisted coset"; });
    auto best = max_proper_twisted(g).size();
    c.expect(solved.f_value == static_cast<int>(g.order() - best), [&] {
      return e.label + ": f = " + std::to_string(solved.f_value) + ", |G| - max = " + std::to_string(g.order() - best);
    });
  }
  return c.done();
}

inline ClaimResult verify_thm2(SolveCache& cache) {
  Checker c("thm2", "f(G) = |Gamma| f(G/Gamma)");
  for (const auto& e : entries({"Z6", "Z10", "Z12", "A4", "D3", "D4", "D5", "D6", "D7", "D8", "Q8"})) {
    auto g = build(e.spec);
    auto gamma = gamma_subgroup(g);
    auto q = quotient(g, gamma);
    const int fg = cache.f(e);
    const int fq = solve_exact(q.table).f_value;
    c.expect(fg == static_cast<int>(gamma.size()) * fq, [&] {
      return e.label + ": f = " + std::to_string(fg) + ", |Gamma| = " + std::to_string(gamma.size()) +
             ", f(G/Gamma) = " + std::to_string(fq);
    });
  }
  return c.done();
}

inline ClaimResult verify_thm3(SolveCache& cache) {
  Checker c("thm3", "nilpotent groups have f = f*(|G|)");
  for (const auto& e : catalog_up_to(100)) {
    auto g = build(e.spec);
    if (!is_nilpotent(g)) continue;
    auto rep = f_theoretical(g);
    const long long fs = f_star(static_cast<long long>(g.order()));
    c.expect(rep.f_theory && *rep.f_theory == fs, [&] { return e.label + ": theory disagrees with f*"; });
    if (g.order() <= 16) c.expect(cache.f(e) == fs, [&] { return e.label + ": solver disagrees with f*"; });
  }
  return c.done();
}

inline ClaimResult verify_thm4() {
  Checker c("thm4", "twisted subgroup sizes divide |G| for odd |G|");
  for (const auto& e : catalog_up_to(81, true)) {
    auto g = build(e.spec);
    c.expect(verify_glauberman(g), [&] { return e.label + ": a twisted subgroup size does not divide |G|"; });
  }
  return c.done();
}

inline ClaimResult verify_lemma1(SolveCache& cache) {
  Checker c("lemma1", "f(K) f(G/K) <= f(G) <= |K| f(G/K) for normal K");
  for (const auto& e : catalog_up_to(16)) {
    auto g = build(e.spec);
    const int fg = cache.f(e);
    for (const auto& k : normal_subgroups(g)) {
      const int fk = solve_exact(subgroup_table(g, k).table).f_value;
      const int fq = solve_exact(quotient(g, k).table).f_value;
      c.expect(fk * fq <= fg && fg <= static_cast<int>(k.size()) * fq, [&] {
        return e.label + ", K = " + k.to_string() + ": f(K) = " + std::to_string(fk) +
               ", f(G/K) = " + std::to_string(fq) + ", f(G) = " + std::to_string(fg);
      });
    }
  }
  return c.done();
}

inline ClaimResult verify_lemma2() {
  Checker c("lemma2", "the two-power sweep reaches x t against every reply sequence");
  for (const auto& e : catalog_up_to(16)) {
    auto g = build(e.spec);
    for (ElemId t = 0; t < g.order(); ++t) {
      if (!is_power_of_two(element_order(g, t))) continue;
      for (ElemId x = 0; x < g.order(); ++x)
        c.expect(sweep_reaches_all(g, x, t),
                 [&] { return e.label + ": x = " + std::to_string(x) + ", t = " + std::to_string(t); });
    }
  }
  return c.done();
}

inline ClaimResult verify_lemma3() {
  Checker c("lemma3", "maximal avoidable sets are betweenness-closed; closed sets avoiding the start are avoidable");
  for (const auto& e : catalog_up_to(12)) {
    auto g = build(e.spec);
    for (const auto& u : maximal_avoidable_sets(g))
      c.expect(is_betweenness_closed(g, u), [&] { return e.label + ": maximal avoidable " + u.to_string(); });
    const std::uint64_t full = (std::uint64_t{1} << g.order()) - 1;
    for (std::uint64_t m = 0; m <= full; m += 2) {  // start (bit 0) excluded
      auto b = ElemSet::from_mask(g.order(), m);
      if (!is_betweenness_closed(g, b)) continue;
      c.expect(solve_open_avoidable(g, b), [&] { return e.label + ": closed but not avoidable " + b.to_string(); });
    }
  }
  return c.done();
}

inline ClaimResult verify_prop1(SolveCache& cache) {
  Checker c("prop1", "the open game has the same value");
  for (const auto& e : catalog_up_to(16)) {
    auto g = build(e.spec);
    const int f = cache.f(e);
    const int tf = tilde_f(g);
    c.expect(f == tf, [&] { return e.label + ": f = " + std::to_string(f) + ", open value " + std::to_string(tf); });
  }
  return c.done();
}

inline ClaimResult verify_prop2() {
  Checker c("prop2", "for odd |G|, betweenness-closed sets are exactly twisted cosets");
  for (const auto& e : catalog_up_to(27, true)) {
    auto g = build(e.spec);
    const auto n = static_cast<ElemId>(g.order());
    auto both_ways = [&](const ElemSet& b, const char* origin) {
      const bool closed = is_betweenness_closed(g, b);
      const bool coset = coset_decompose(g, b).has_value();
      c.expect(closed == coset, [&] {
        return e.label + " (" + origin + "): " + b.to_string() + " closed=" + std::to_string(closed) +
               " coset=" + std::to_string(coset);
      });
    };
    for (ElemId a = 0; a < n; ++a)
      for (ElemId b = a; b < n; ++b) both_ways(betweenness_closure(g, ElemSet(n, {a, b})), "closure");
    for (const auto& t : enumerate_twisted_subgroups(g))
      for (ElemId x = 0; x < n; ++x) both_ways(translate(g, x, t), "translate");
  }
  return c.done();
}

inline ClaimResult verify_sec5() {
  Checker c("sec5", "non-subgroup twisted subgroups at orders 27 and 75; pinned bounds at 21 and 75");
  for (const char* label : {"Heis3", "Z5^2:Z3"}) {
    auto g = build(find_catalog_entry(label)->spec);
    auto w = find_nonsubgroup_twisted(g);
    c.expect(w && is_twisted_subgroup(g, *w) && !is_subgroup(g, *w),
             [&] { return std::string(label) + ": no non-subgroup twisted subgroup"; });
  }
  for (auto [label, f] : {std::pair{"Z7:Z3", 14LL}, std::pair{"Z5^2:Z3", 50LL}}) {
    auto b = bounds(build(find_catalog_entry(label)->spec));
    c.expect(b.pinned() && b.lower == f, [&] {
      return std::string(label) + ": bounds " + std::to_string(b.lower) + ".." + std::to_string(b.upper);
    });
  }
  auto r21 = f_theoretical(build(order21_spec()));
  c.expect(r21.method == Method::OddTwistedFormula && r21.f_theory == 14,
           [] { return std::string("Z7:Z3: twisted formula does not give 14"); });
  return c.done();
}

}  // namespace detail

// Runs the checks for one scope, or every scope for "all".
inline VerifyReport verify_paper(const std::string& scope) {
  if (scope != "all" && std::find(verify_scopes().begin(), verify_scopes().end(), scope) == verify_scopes().end())
    fail(ErrorCode::InvalidSpec, "unknown scope '" + scope + "'");
  detail::SolveCache cache;
  VerifyReport report;
  auto want = [&](const char* s) { return scope == "all" || scope == s; };
  if (want("thm1")) report.claims.push_back(detail::verify_thm1());
  if (want("thm2")) report.claims.push_back(detail::verify_thm2(cache));
  if (want("thm3")) report.claims.push_back(detail::verify_thm3(cache));
  if (want("thm4")) report.claims.push_back(detail::verify_thm4());
  if (want("lemma1")) report.claims.push_back(detail::verify_lemma1(cache));
  if (want("lemma2")) report.claims.push_back(detail::verify_lemma2());
  if (want("lemma3")) report.claims.push_back(detail::verify_lemma3());
  if (want("prop1")) report.claims.push_back(detail::verify_prop1(cache));
  if (want("prop2")) report.claims.push_back(detail::verify_prop2());
  if (want("sec5")) report.claims.push_back(detail::verify_sec5());
  return report;
}

inline nlohmann::ordered_json to_json(const ClaimResult& c) {
  nlohmann::ordered_json j{{"scope", c.scope}, {"claim", c.claim}, {"passed", c.passed}, {"checked", c.checked}};
  if (!c.passed) j["counterexample"] = c.counterexample;
  return j;
}

}  // namespace twistgame
