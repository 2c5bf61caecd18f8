#include <gtest/gtest.h>
#include <httplib.h>

#include <future>

#include "remixlab/remix/image.hpp"
#include "remixlab/service/http_server.hpp"
#include "service_support.hpp"

namespace rl = remixlab;
using namespace rl::service;
using nlohmann::json;
using rl::testing::TempDir;

namespace {

// A service plus server on a free loopback port.
struct Server {
  TempDir dir{"http"};
  rl::scaffold::StubBackend stub;
  rl::remix::StubImageBackend image;
  std::unique_ptr<Service> service;
  std::unique_ptr<HttpServer> http;
  int port = 0;

  explicit Server(ServiceConfig cfg, rl::scaffold::Backend* text = nullptr) {
    cfg.state_dir = dir.path;
    cfg.worker_threads = 4;
    ServiceDeps deps;
    deps.text = text ? text : &stub;
    deps.image = &image;
    deps.clock = [] { return std::int64_t{5000}; };
    deps.new_id = rl::testing::counter_ids();
    service = std::make_unique<Service>(cfg, std::move(deps));
    http = std::make_unique<HttpServer>(*service);
    port = http->start("127.0.0.1", 0);
  }
  Server() : Server(ServiceConfig{}) {}
  ~Server() { http->stop(); }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(30, 0);
    return c;
  }
  std::string create(const std::string& fixture = "soccer_min") {
    auto res = client().Post("/api/sessions?name=" + fixture, rl::testing::archive_bytes(fixture),
                             "application/octet-stream");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 201);
    return json::parse(res->body)["session_id"];
  }
};

json body_of(const httplib::Result& res) { return json::parse(res->body); }

std::string error_code(const httplib::Result& res) { return body_of(res)["error"]["code"]; }

}  // namespace

TEST(Http, HealthAndCors) {
  ServiceConfig cfg;
  cfg.cors_origin = "http://localhost:5173";
  Server s(cfg);
  auto res = s.client().Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(body_of(res)["status"], "ok");
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");

  auto pre = s.client().Options("/api/sessions/s1/turns");
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);
  EXPECT_NE(pre->get_header_value("Access-Control-Allow-Methods").find("PUT"), std::string::npos);
}

TEST(Http, CreateSessionMatchesDirectCall) {
  Server s;
  auto res = s.client().Post("/api/sessions?name=soccer_min", rl::testing::archive_bytes("soccer_min"),
                             "application/octet-stream");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 201);
  json via_http = body_of(res);
  json direct = s.service->create_session(rl::testing::archive_bytes("soccer_min"), "soccer_min");
  EXPECT_EQ(via_http["session_id"], "s1");
  via_http.erase("session_id");
  direct.erase("session_id");
  EXPECT_EQ(via_http, direct);

  auto list = s.client().Get("/api/sessions");
  EXPECT_EQ(body_of(list)["sessions"], (json{"s1", "s2"}));
  auto doc = s.client().Get("/api/sessions/s1");
  EXPECT_EQ(body_of(doc), s.service->get_session("s1"));
}

TEST(Http, TypedErrorBodies) {
  Server s;
  auto missing = s.client().Get("/api/sessions/nope");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(error_code(missing), "NotFound");
  EXPECT_EQ(body_of(missing)["error"]["location"], "nope");

  auto route = s.client().Get("/api/unknown");
  EXPECT_EQ(route->status, 404);
  EXPECT_EQ(error_code(route), "NotFound");

  auto bad_archive = s.client().Post("/api/sessions", "not a zip", "application/octet-stream");
  EXPECT_EQ(bad_archive->status, 400);

  std::string id = s.create();
  auto bad_json = s.client().Post("/api/sessions/" + id + "/turns", "{\"input\":", "application/json");
  EXPECT_EQ(bad_json->status, 400);
  EXPECT_EQ(error_code(bad_json), "InvalidArgument");
  EXPECT_EQ(body_of(bad_json)["error"]["location"], "byte 10");

  auto bad_input = s.client().Post("/api/sessions/" + id + "/turns", R"({"input":"wave"})", "application/json");
  EXPECT_EQ(bad_input->status, 400);
  EXPECT_EQ(body_of(bad_input)["error"]["location"], "/input");

  auto bad_graph = s.client().Put("/api/sessions/" + id + "/graph", "{}", "application/json");
  EXPECT_EQ(bad_graph->status, 400);
  EXPECT_EQ(error_code(bad_graph), "MalformedGraphDocument");
}

TEST(Http, UploadLimitIs413) {
  ServiceConfig cfg;
  cfg.max_upload_bytes = 1024;
  Server s(cfg);
  auto res = s.client().Post("/api/sessions", std::string(4096, 'x'), "application/octet-stream");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 413);
  EXPECT_EQ(error_code(res), "PayloadTooLarge");
  EXPECT_EQ(body_of(s.client().Get("/api/sessions"))["sessions"].size(), 0u);
}

TEST(Http, DialogueLoopAndTranscript) {
  Server s;
  std::string id = s.create();
  std::string last_state;
  for (const auto& t : rl::testing::loop_turns()) {
    auto res = s.client().Post("/api/sessions/" + id + "/turns", t.dump(), "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200) << res->body;
    last_state = body_of(res)["state"];
  }
  EXPECT_EQ(last_state, "Resolved");
  auto again = s.client().Post("/api/sessions/" + id + "/turns", R"({"input":"got_it"})", "application/json");
  EXPECT_EQ(again->status, 409);
  EXPECT_EQ(error_code(again), "SessionResolved");

  auto tr = s.client().Get("/api/sessions/" + id + "/transcript");
  EXPECT_EQ(body_of(tr), s.service->transcript(id));
  std::string text = body_of(tr)["text"];
  EXPECT_NE(text.find("session state: Resolved"), std::string::npos);
}

TEST(Http, ConcurrentTurnsOnOneSession) {
  rl::testing::GateBackend gate;
  Server s(ServiceConfig{}, &gate);
  std::string id = s.create();
  gate.close();
  auto slow = std::async(std::launch::async, [&] {
    return s.client().Post("/api/sessions/" + id + "/turns", rl::testing::loop_turns()[0].dump(),
                           "application/json");
  });
  gate.wait_for_caller();
  auto second = s.client().Post("/api/sessions/" + id + "/turns", R"({"input":"got_it"})", "application/json");
  ASSERT_TRUE(second);
  EXPECT_EQ(second->status, 409);
  EXPECT_EQ(error_code(second), "Conflict");
  auto health = s.client().Get("/api/health");
  EXPECT_EQ(health->status, 200);
  gate.open();
  auto first = slow.get();
  ASSERT_TRUE(first);
  EXPECT_EQ(first->status, 200);
  EXPECT_EQ(body_of(first)["state"], "VisualScaffold");
}

TEST(Http, GraphRemixEdgesAssetsAndDelete) {
  Server s;
  std::string id = s.create();
  auto graph = s.client().Get("/api/sessions/" + id + "/graph");
  EXPECT_EQ(body_of(graph), s.service->get_graph(id));

  auto remix = s.client().Post("/api/sessions/" + id + "/remix",
                               R"({"utterance":"I want an energy ball in this soccer game"})",
                               "application/json");
  ASSERT_EQ(remix->status, 200) << remix->body;
  json proposals = body_of(remix)["proposals"];
  ASSERT_EQ(proposals.size(), 2u);
  std::string ref = proposals[0]["image_ref"];
  auto png = s.client().Get("/api/assets/" + ref);
  ASSERT_EQ(png->status, 200);
  EXPECT_EQ(png->get_header_value("Content-Type"), "image/png");
  EXPECT_EQ(png->body, s.service->asset(ref));
  auto bad_asset = s.client().Get("/api/assets/00/" + std::string(64, '0') + ".png");
  EXPECT_EQ(bad_asset->status, 404);
  auto traversal = s.client().Get("/api/assets/../sessions/s1.json");
  EXPECT_EQ(traversal->status, 404);

  auto edges = s.client().Post("/api/sessions/" + id + "/edges", R"({"node_id":"ghost"})", "application/json");
  EXPECT_EQ(edges->status, 400);
  EXPECT_EQ(error_code(edges), "UnknownId");

  auto del = s.client().Delete("/api/sessions/" + id);
  EXPECT_EQ(del->status, 204);
  EXPECT_EQ(s.client().Get("/api/sessions/" + id)->status, 404);
  EXPECT_EQ(s.client().Delete("/api/sessions/" + id)->status, 404);
}
