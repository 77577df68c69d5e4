#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "twistgame/http_api.hpp"

namespace tg = twistgame;
using nlohmann::json;

namespace {

class Api : public ::testing::Test {
protected:
  void SetUp() override {
    ui_dir_ = std::filesystem::temp_directory_path() / "twistgame_ui_test";
    std::filesystem::create_directories(ui_dir_);
    std::ofstream(ui_dir_ / "index.html") << "<html>ui</html>";
    tg::install_routes(server_, manager_, ui_dir_.string());
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  json post(const std::string& path, const json& body, int expect_status) {
    auto r = client_->Post(path, body.dump(), "application/json");
    EXPECT_TRUE(r);
    if (!r) return {};
    EXPECT_EQ(r->status, expect_status) << path << " " << r->body;
    return json::parse(r->body);
  }
  json get(const std::string& path, int expect_status) {
    auto r = client_->Get(path);
    EXPECT_TRUE(r);
    if (!r) return {};
    EXPECT_EQ(r->status, expect_status) << path << " " << r->body;
    return json::parse(r->body);
  }

  std::filesystem::path ui_dir_;
  tg::SessionManager manager_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace

TEST_F(Api, GroupsCatalog) {
  auto groups = get("/api/groups", 200);
  ASSERT_TRUE(groups.is_array());
  EXPECT_EQ(groups.size(), tg::default_catalog().size());
  EXPECT_EQ(groups[0]["label"], "Z2");
  EXPECT_EQ(groups[0]["group_spec"]["kind"], "cyclic");
}

TEST_F(Api, FullGameAsExplorer) {
  auto created = post("/api/games", {{"group_spec", {{"kind", "cyclic"}, {"n", 9}}}, {"human_role", "explorer"},
                                     {"engine", "optimal"}},
                      201);
  const std::string id = created["session"]["id"];
  auto state = get("/api/games/" + id, 200);
  EXPECT_EQ(state["state_hash"], created["session"]["state_hash"]);
  json s = state;
  for (int r = 0; !s["game_over"].get<bool>(); ++r)
    s = post("/api/games/" + id + "/move", {{"explorer_element", (r * 4 + 1) % 9}, {"round", s["round"]}}, 200);
  EXPECT_LE(s["visited"].size(), 6u);
  auto a = get("/api/games/" + id + "/analysis", 200);
  EXPECT_EQ(a["f_theory"], 6);
  EXPECT_EQ(a["visited_count"], s["visited"].size());
}

TEST_F(Api, HumanDirectorGetsEngineMoves) {
  auto created = post("/api/games", {{"group_spec", "Z9"}, {"human_role", "director"}, {"engine", "optimal"}}, 201);
  const std::string id = created["session"]["id"];
  ASSERT_TRUE(created["session"]["pending"].is_number());
  auto r = post("/api/games/" + id + "/move", {{"director_sign", -1}, {"round", 1}}, 200);
  EXPECT_TRUE(r["engine_move"]["explorer_element"].is_number());
  EXPECT_EQ(r["transcript"][0]["director_sign"], -1);
}

TEST_F(Api, ErrorStatuses) {
  auto bad = post("/api/games", {{"group_spec", {{"kind", "cyclic"}, {"n", 0}}}, {"human_role", "explorer"}}, 400);
  EXPECT_EQ(bad["code"], "invalid-spec");
  EXPECT_TRUE(bad["message"].is_string());
  auto r = client_->Post("/api/games", "{not json", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(get("/api/games/deadbeef", 404)["code"], "unknown-session");
  EXPECT_EQ(post("/api/games/deadbeef/move", {{"explorer_element", 1}, {"round", 1}}, 404)["code"], "unknown-session");

  auto id = post("/api/games", {{"group_spec", "Z9"}, {"human_role", "explorer"}, {"engine", "random"}}, 201)["session"]["id"]
                .get<std::string>();
  EXPECT_EQ(post("/api/games/" + id + "/move", {{"director_sign", 1}, {"round", 1}}, 409)["code"], "wrong-phase");
  EXPECT_EQ(post("/api/games/" + id + "/move", {{"explorer_element", 99}, {"round", 1}}, 400)["code"], "illegal-element");
  EXPECT_EQ(post("/api/games/" + id + "/move", {{"explorer_element", 1}, {"round", 3}}, 409)["code"], "conflict");
  EXPECT_EQ(post("/api/games/" + id + "/move", {{"explorer_element", 1}}, 400)["code"], "invalid-spec");
  auto first = post("/api/games/" + id + "/move", {{"explorer_element", 2}, {"round", 1}}, 200);
  EXPECT_EQ(post("/api/games/" + id + "/move", {{"explorer_element", 2}, {"round", 1}}, 200), first);
}

TEST_F(Api, CapacityIs503) {
  tg::ServiceOptions opts;
  opts.max_sessions = 1;
  tg::SessionManager small(opts);
  httplib::Server srv;
  tg::install_routes(srv, small);
  int port = srv.bind_to_any_port("127.0.0.1");
  std::thread th([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  httplib::Client c("127.0.0.1", port);
  json body{{"group_spec", "Z3"}, {"human_role", "explorer"}, {"engine", "random"}};
  EXPECT_EQ(c.Post("/api/games", body.dump(), "application/json")->status, 201);
  auto r = c.Post("/api/games", body.dump(), "application/json");
  EXPECT_EQ(r->status, 503);
  EXPECT_EQ(json::parse(r->body)["code"], "capacity");
  srv.stop();
  th.join();
}

TEST_F(Api, CorsAndStaticUi) {
  auto r = client_->Get("/api/groups");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
  auto pre = client_->Options("/api/games");
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);
  auto page = client_->Get("/index.html");
  ASSERT_TRUE(page);
  EXPECT_EQ(page->status, 200);
  EXPECT_EQ(page->body, "<html>ui</html>");
}
