#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "twistgame/http_api.hpp"
#include "twistgame/twistgame.hpp"

namespace tg = twistgame;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// A catalog label, inline JSON, or a path to a JSON file.
tg::GroupSpec resolve_group(const std::string& arg) {
  if (auto e = tg::find_catalog_entry(arg)) return e->spec;
  std::string text = arg;
  if (arg.empty() || arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) tg::fail(tg::ErrorCode::InvalidSpec, "'" + arg + "' is neither a catalog label nor a readable file");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return tg::spec_from_json(json::parse(text));
  } catch (const json::exception& e) {
    tg::fail(tg::ErrorCode::InvalidSpec, std::string("bad JSON: ") + e.what());
  }
}

std::vector<std::string> named(const tg::GroupTable& g, const tg::ElemSet& s) {
  std::vector<std::string> out;
  s.for_each([&](tg::ElemId x) { out.push_back(g.name(x)); });
  return out;
}

int run_census(std::size_t max_order, bool odd_only, const std::vector<std::string>& kinds, std::size_t jobs,
               const std::string& out_path, bool no_timing) {
  tg::CensusOptions opts;
  opts.jobs = jobs;
  opts.timing = !no_timing;
  auto result = tg::run_census({max_order, odd_only, kinds}, opts);
  const auto jsonl = tg::census_jsonl(result, opts.timing);
  if (out_path.empty()) {
    std::cout << jsonl;
    std::cerr << tg::census_summary(result);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << jsonl;
    std::cout << tg::census_summary(result);
  }
  return result.ok ? 0 : 1;
}

int run_solve(const std::string& group, tg::ElemId start, std::size_t cap) {
  auto g = tg::build(resolve_group(group));
  auto solved = tg::solve_exact(g, start, tg::SolverOptions{cap});
  auto t = tg::play_match(g, start, tg::optimal_explorer(solved), tg::optimal_director(solved), 10 * g.order());
  ojson j{{"group_spec", tg::to_json(g.spec())}, {"order", g.order()}, {"start", start},
          {"f", solved.f_value}, {"optimal_unvisited", solved.optimal_unvisited.members()},
          {"optimal_unvisited_names", named(g, solved.optimal_unvisited)}, {"optimal_play", tg::to_json(t)}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_twisted(const std::string& group, bool enumerate, bool max_only) {
  auto g = tg::build(resolve_group(group));
  ojson j{{"group_spec", tg::to_json(g.spec())}, {"order", g.order()}};
  if (!max_only) {
    auto all = tg::enumerate_twisted_subgroups(g);
    j["count"] = all.size();
    std::set<std::size_t> l;
    for (const auto& t : all)
      if (t.size() < g.order()) l.insert(t.size());
    j["L"] = l;
    if (enumerate) {
      auto arr = ojson::array();
      for (const auto& t : all)
        arr.push_back({{"members", t.members()}, {"size", t.size()}, {"is_subgroup", tg::is_subgroup(g, t)}});
      j["twisted_subgroups"] = std::move(arr);
    }
  }
  if (g.order() >= 2) {
    auto best = tg::max_proper_twisted(g);
    j["max_proper"] = {{"members", best.members()}, {"names", named(g, best)}, {"size", best.size()}};
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_verify(const std::string& scope, bool as_json) {
  auto report = tg::verify_paper(scope);
  for (const auto& c : report.claims) {
    if (as_json) {
      std::cout << tg::to_json(c).dump() << "\n";
      continue;
    }
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.scope << ": " << c.claim << " (" << c.checked << " checks)\n";
    if (!c.passed) std::cout << "     counterexample: " << c.counterexample << "\n";
  }
  return report.passed() ? 0 : 1;
}

void print_state(const ojson& s) {
  std::cout << "round " << s["round"].get<std::size_t>() << "  token at " << s["pos"] << "  visited "
            << s["visited"].size() << "/" << s["order"] << " " << s["visited"].dump() << "\n";
}

int run_play(const std::string& group, const std::string& role, const std::string& engine) {
  tg::SessionManager manager;
  auto spec = resolve_group(group);
  auto s = manager.create(tg::to_json(spec), tg::role_from_string(role), engine);
  const std::string id = s["id"];
  if (s["downgraded"].get<bool>()) std::cout << "(optimal engine unavailable at this order; using theoretical)\n";
  std::cout << "elements: ";
  for (std::size_t i = 0; i < s["element_names"].size(); ++i) std::cout << i << "=" << s["element_names"][i] << " ";
  std::cout << "\n";
  std::string line;
  while (!s["game_over"].get<bool>()) {
    print_state(s);
    const bool explorer = role == "explorer";
    if (explorer) std::cout << "name an element: ";
    else std::cout << "engine names " << s["pending"] << "; reply + or -: ";
    if (!std::getline(std::cin, line)) return 0;
    tg::MoveRequest m;
    m.round = s["round"];
    try {
      if (explorer) m.explorer_element = static_cast<tg::ElemId>(std::stoul(line));
      else m.director_sign = line == "-" || line == "-1" ? -1 : 1;
      s = manager.submit(id, m);
    } catch (const std::exception& e) {
      std::cout << e.what() << "\n";
      continue;
    }
    if (explorer) std::cout << "director answers " << s["engine_move"]["director_sign"] << "\n";
  }
  print_state(s);
  std::cout << manager.analyze(id).dump(2) << "\n";
  return 0;
}

int run_serve(const std::string& host, int port, const std::string& ui_dir) {
  tg::SessionManager manager;
  httplib::Server server;
  tg::install_routes(server, manager, ui_dir);
  std::cout << "listening on http://" << host << ":" << port << "\n" << std::flush;
  return server.listen(host, port) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explorer-Director games on finite groups"};
  app.require_subcommand(1);

  std::size_t max_order = 16, jobs = 1, cap = 16;
  bool odd_only = false, no_timing = false, enumerate = false, max_only = false, as_json = false;
  std::vector<std::string> kinds;
  std::string out_path, group, scope = "all", role = "explorer", engine = "optimal", ui_dir, host = "127.0.0.1";
  tg::ElemId start = tg::kIdentity;
  int port = 8080;

  auto* census = app.add_subcommand("census", "run the catalog census");
  census->add_option("--max-order", max_order);
  census->add_flag("--odd-only", odd_only);
  census->add_option("--kinds", kinds, "group kinds to include")->delimiter(',');
  census->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  census->add_option("--out", out_path, "JSONL output path (default stdout)");
  census->add_flag("--no-timing", no_timing);

  auto* solve = app.add_subcommand("solve", "exact game value");
  solve->add_option("--group", group, "catalog label, inline JSON or spec file")->required();
  solve->add_option("--start", start);
  solve->add_option("--cap", cap, "solver order cap (max 20)");

  auto* twisted = app.add_subcommand("twisted", "twisted subgroups");
  twisted->add_option("--group", group)->required();
  auto* en = twisted->add_flag("--enumerate", enumerate);
  twisted->add_flag("--max", max_only)->excludes(en);

  auto* verify = app.add_subcommand("verify", "check the structural claims by brute force");
  verify->add_option("--scope", scope)
      ->check(CLI::IsMember({"thm1", "thm2", "thm3", "thm4", "lemma1", "lemma2", "lemma3", "prop1", "prop2", "sec5",
                             "all"}));
  verify->add_flag("--json", as_json);

  auto* play = app.add_subcommand("play", "play in the terminal");
  play->add_option("--group", group)->required();
  play->add_option("--role", role)->check(CLI::IsMember({"explorer", "director"}));
  play->add_option("--engine", engine)->check(CLI::IsMember({"optimal", "theoretical", "random"}));

  auto* serve = app.add_subcommand("serve", "HTTP play service");
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--ui-dir", ui_dir);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*census) return run_census(max_order, odd_only, kinds, jobs, out_path, no_timing);
    if (*solve) return run_solve(group, start, cap);
    if (*twisted) return run_twisted(group, enumerate, max_only);
    if (*verify) return run_verify(scope, as_json);
    if (*play) return run_play(group, role, engine);
    if (*serve) return run_serve(host, port, ui_dir);
  } catch (const tg::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
