#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "budget.hpp"
#include "catalog.hpp"
#include "error.hpp"
#include "group.hpp"
#include "group_ops.hpp"
#include "solver.hpp"
#include "theory.hpp"
#include "twisted.hpp"

namespace twistgame {

// Smallest twisted subgroup that is not closed under multiplication (ties by
// member list), if any.
inline std::optional<ElemSet> find_nonsubgroup_twisted(const GroupTable& g, const Budget& budget = Budget::from_env()) {
  for (const auto& t : enumerate_twisted_subgroups(g, budget))  // already in canonical order
    if (!is_subgroup(g, t)) return t;
  return std::nullopt;
}

struct CensusFilter {
  std::size_t max_order = 16;
  bool odd_only = false;
  std::vector<std::string> kinds;  // empty = all
};

struct CensusOptions {
  std::size_t jobs = 1;
  bool timing = true;
  SolverOptions solver;
  Budget budget = Budget::from_env();
};

struct CensusRecord {
  std::string group_label;
  GroupSpec group_spec;
  std::size_t order = 0;
  bool abelian = false;
  bool nilpotent = false;
  TheoryReport theory;
  std::optional<long long> f_oracle;
  std::optional<std::vector<std::size_t>> L_sizes;
  std::optional<bool> glauberman_ok;
  std::optional<ElemSet> witness_unvisited;
  std::vector<std::pair<std::string, double>> runtimes_ms;
  std::string status = "ok";
  std::vector<std::string> failures;

  bool invariant_failed() const { return !failures.empty(); }
};

namespace detail {

template <typename F>
auto timed(std::vector<std::pair<std::string, double>>& log, const char* stage, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  auto finish = [&] {
    log.emplace_back(stage, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  };
  if constexpr (std::is_void_v<decltype(f())>) {
    f();
    finish();
  } else {
    auto r = f();
    finish();
    return r;
  }
}

}  // namespace detail

inline CensusRecord census_record(const CatalogEntry& entry, const CensusOptions& opts) {
  CensusRecord r;
  r.group_label = entry.label;
  r.group_spec = entry.spec;
  auto g = detail::timed(r.runtimes_ms, "build", [&] { return build(entry.spec); });
  r.order = g.order();
  r.abelian = g.is_abelian();
  r.nilpotent = is_nilpotent(g);
  bool budget_hit = false;

  r.theory = detail::timed(r.runtimes_ms, "theory", [&] { return f_theoretical(g, opts.budget); });
  if (r.theory.method == Method::BoundsOnly) budget_hit = true;

  if (g.order() <= std::min(opts.solver.max_order, kSolverHardCap)) {
    auto solved = detail::timed(r.runtimes_ms, "oracle", [&] { return solve_exact(g, kIdentity, opts.solver); });
    r.f_oracle = solved.f_value;
    r.witness_unvisited = solved.optimal_unvisited;
  }

  if (g.order() % 2 == 1) {
    try {
      detail::timed(r.runtimes_ms, "twisted", [&] {
        auto all = enumerate_twisted_subgroups(g, opts.budget);
        std::vector<std::size_t> sizes;
        bool divides = true;
        for (const auto& t : all) {
          if (t.size() < g.order()) sizes.push_back(t.size());
          divides = divides && g.order() % t.size() == 0;
        }
        std::sort(sizes.begin(), sizes.end());
        sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
        r.L_sizes = std::move(sizes);
        r.glauberman_ok = divides;
      });
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      budget_hit = true;
    }
  }

  const auto& t = r.theory;
  if (t.lower_bound > t.upper_bound) r.failures.push_back("lower bound exceeds upper bound");
  if (t.f_theory && (*t.f_theory < t.lower_bound || *t.f_theory > t.upper_bound))
    r.failures.push_back("f_theory outside bounds");
  if (t.f_theory && r.f_oracle && *t.f_theory != *r.f_oracle) r.failures.push_back("f_theory != f_oracle");
  if (r.f_oracle && (*r.f_oracle < t.lower_bound || *r.f_oracle > t.upper_bound))
    r.failures.push_back("f_oracle outside bounds");
  if (r.glauberman_ok && !*r.glauberman_ok) r.failures.push_back("twisted subgroup size does not divide |G|");
  if (r.invariant_failed()) r.status = "invariant-failed";
  else if (budget_hit) r.status = "budget-exceeded";
  return r;
}

inline nlohmann::ordered_json to_json(const CensusRecord& r, bool timing) {
  using J = nlohmann::ordered_json;
  auto opt = [](const auto& o) { return o ? J(*o) : J(nullptr); };
  J j;
  j["group_label"] = r.group_label;
  j["group_spec"] = to_json(r.group_spec);
  j["order"] = r.order;
  j["abelian"] = r.abelian;
  j["nilpotent"] = r.nilpotent;
  j["gamma_size"] = r.theory.gamma_size;
  j["f_star"] = r.theory.f_star;
  j["f_theory"] = opt(r.theory.f_theory);
  j["f_oracle"] = opt(r.f_oracle);
  j["method"] = to_string(r.theory.method);
  j["lower_bound"] = r.theory.lower_bound;
  j["upper_bound"] = r.theory.upper_bound;
  j["bounds_pinned"] = r.theory.bounds_pinned;
  j["L_sizes"] = opt(r.L_sizes);
  j["glauberman_ok"] = opt(r.glauberman_ok);
  j["conjecture_flags"] = to_json(r.theory.conjectures);
  j["witness_unvisited"] = r.witness_unvisited ? J(r.witness_unvisited->members()) : J(nullptr);
  j["status"] = r.status;
  j["failures"] = r.failures;
  if (timing) {
    J rt = J::object();
    for (const auto& [stage, ms] : r.runtimes_ms) rt[stage] = ms;
    j["runtimes_ms"] = std::move(rt);
  }
  return j;
}

inline std::vector<CatalogEntry> select_catalog(const CensusFilter& filter) {
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog_up_to(filter.max_order, filter.odd_only)) {
    if (!filter.kinds.empty() &&
        std::find(filter.kinds.begin(), filter.kinds.end(), e.spec.kind()) == filter.kinds.end())
      continue;
    out.push_back(e);
  }
  return out;
}

struct CensusResult {
  std::vector<CensusRecord> records;
  bool ok = true;
};

// Records come back in catalog order regardless of which worker finished
// first.
inline CensusResult run_census(const CensusFilter& filter, const CensusOptions& opts) {
  auto entries = select_catalog(filter);
  CensusResult result;
  result.records.resize(entries.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(entries.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        result.records[i] = census_record(entries[i], opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, entries.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& r : result.records)
    if (r.invariant_failed()) result.ok = false;
  return result;
}

inline std::string census_jsonl(const CensusResult& result, bool timing) {
  std::string out;
  for (const auto& r : result.records) out += to_json(r, timing).dump() + "\n";
  return out;
}

inline std::string census_summary(const CensusResult& result) {
  std::ostringstream os;
  auto opt = [](const auto& o) { return o ? std::to_string(*o) : std::string("-"); };
  os << std::left << std::setw(12) << "group" << std::right << std::setw(6) << "|G|" << std::setw(6) << "|Gam|"
     << std::setw(6) << "f*" << std::setw(8) << "theory" << std::setw(8) << "oracle" << std::setw(12) << "bounds"
     << "  " << std::left << std::setw(22) << "method" << "status\n";
  for (const auto& r : result.records) {
    os << std::left << std::setw(12) << r.group_label << std::right << std::setw(6) << r.order << std::setw(6)
       << r.theory.gamma_size << std::setw(6) << r.theory.f_star << std::setw(8) << opt(r.theory.f_theory)
       << std::setw(8) << opt(r.f_oracle) << std::setw(12)
       << (std::to_string(r.theory.lower_bound) + ".." + std::to_string(r.theory.upper_bound)) << "  " << std::left
       << std::setw(22) << to_string(r.theory.method) << r.status << "\n";
  }
  std::size_t failed = 0;
  for (const auto& r : result.records) failed += r.invariant_failed();
  os << result.records.size() << " groups, " << failed << " invariant failures\n";
  return os.str();
}

}  // namespace twistgame
