#pragma once

// HTTP/JSON front end for SessionManager. Requires httplib.h on the include
// path.

#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "error.hpp"
#include "service.hpp"

namespace twistgame {

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::WrongPhase:
    case ErrorCode::Conflict: return 409;
    case ErrorCode::Capacity:
    case ErrorCode::BudgetExceeded: return 503;
    case ErrorCode::Internal: return 500;
    default: return 400;
  }
}

namespace detail {

inline void send_json(httplib::Response& res, const nlohmann::ordered_json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, {{"code", std::string(to_string(code))}, {"message", message}}, http_status(code));
}

inline nlohmann::json parse_body(const httplib::Request& req) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidSpec, std::string("request body is not JSON: ") + e.what());
  }
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      std::string msg = e.what();
      const auto prefix = std::string(to_string(e.code())) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
      send_error(res, e.code(), msg);
    } catch (const std::exception& e) {
      send_error(res, ErrorCode::Internal, e.what());
    }
  };
}

}  // namespace detail

// Registers the /api routes on `server`; serves `ui_dir` at / when given.
inline void install_routes(httplib::Server& server, SessionManager& manager, const std::string& ui_dir = "") {
  using detail::guarded;
  using detail::send_json;
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/api/groups", guarded([&manager](const httplib::Request&, httplib::Response& res) {
               send_json(res, manager.groups());
             }));

  server.Post("/api/games", guarded([&manager](const httplib::Request& req, httplib::Response& res) {
                auto body = detail::parse_body(req);
                if (!body.is_object() || !body.contains("group_spec"))
                  fail(ErrorCode::InvalidSpec, "body needs group_spec, human_role, engine");
                auto role = role_from_string(body.value("human_role", std::string{}));
                auto engine = body.value("engine", std::string("optimal"));
                std::optional<std::uint64_t> seed;
                if (body.contains("seed")) {
                  if (!body.at("seed").is_number_unsigned()) fail(ErrorCode::InvalidSpec, "seed must be unsigned");
                  seed = body.at("seed").get<std::uint64_t>();
                }
                send_json(res, {{"session", manager.create(body.at("group_spec"), role, engine, seed)}}, 201);
              }));

  server.Get(R"(/api/games/([^/]+))", guarded([&manager](const httplib::Request& req, httplib::Response& res) {
               send_json(res, manager.get(req.matches[1]));
             }));

  server.Post(R"(/api/games/([^/]+)/move)",
              guarded([&manager](const httplib::Request& req, httplib::Response& res) {
                send_json(res, manager.submit(req.matches[1], move_from_json(detail::parse_body(req))));
              }));

  server.Get(R"(/api/games/([^/]+)/analysis)",
             guarded([&manager](const httplib::Request& req, httplib::Response& res) {
               send_json(res, manager.analyze(req.matches[1]));
             }));

  server.Get(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, {{"code", "not-found"}, {"message", "no such resource"}}, 404);
  });

  if (!ui_dir.empty() && !server.set_mount_point("/", ui_dir))
    fail(ErrorCode::InvalidSpec, "ui directory '" + ui_dir + "' does not exist");
}

}  // namespace twistgame
