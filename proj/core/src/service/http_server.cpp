#include "remixlab/service/http_server.hpp"

#include <httplib.h>

#include <chrono>

#include "remixlab/error.hpp"

namespace remixlab::service {
namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";
constexpr const char* kSessionPath = R"(/api/sessions/([A-Za-z0-9_-]{1,64}))";

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, http_status(e.code()), error_body(e));
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidArgument, "request body is not valid JSON",
                "byte " + std::to_string(e.byte));
  }
}

// Runs a handler, turning typed errors into their status and body.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f = std::move(f)](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_json(res, 500,
                {{"error", {{"code", "Internal"}, {"message", e.what()}, {"location", ""}}}});
    }
  };
}

}  // namespace

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(Service& service) : service_(service), impl_(std::make_unique<Impl>()) {
  auto& srv = impl_->server;
  Service& svc = service_;
  const ServiceConfig& cfg = svc.config();

  unsigned workers = cfg.worker_threads;
  srv.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
  srv.set_payload_max_length(cfg.max_upload_bytes);

  std::string origin = cfg.cors_origin;
  srv.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    if (res.status == 413) {
      send_error(res, Error(Errc::PayloadTooLarge, "request body exceeds the upload limit"));
    } else if (res.status == 404) {
      send_error(res, Error(Errc::NotFound, "no such route"));
    }
  });
  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  srv.Get("/api/health", guarded([](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, {{"status", "ok"}});
          }));
  srv.Get("/api/sessions", guarded([&svc](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, svc.list_sessions());
          }));
  srv.Post("/api/sessions", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
             std::string name = req.has_param("name") ? req.get_param_value("name") : "";
             send_json(res, 201, svc.create_session(req.body, name));
           }));
  srv.Get(kSessionPath, guarded([&svc](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, svc.get_session(req.matches[1]));
          }));
  srv.Delete(kSessionPath, guarded([&svc](const httplib::Request& req, httplib::Response& res) {
               svc.delete_session(req.matches[1]);
               res.status = 204;
             }));
  std::string base = kSessionPath;
  srv.Get(base + "/graph", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, svc.get_graph(req.matches[1]));
          }));
  srv.Put(base + "/graph", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, svc.put_graph(req.matches[1], req.body));
          }));
  srv.Post(base + "/turns", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
             send_json(res, 200, svc.chat_turn(req.matches[1], parse_body(req)));
           }));
  srv.Post(base + "/remix", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
             send_json(res, 200, svc.remix(req.matches[1], parse_body(req)));
           }));
  srv.Post(base + "/edges", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
             send_json(res, 200, svc.suggest_edges(req.matches[1], parse_body(req)));
           }));
  srv.Get(base + "/transcript",
          guarded([&svc](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, svc.transcript(req.matches[1]));
          }));
  srv.Get(R"(/api/assets/([0-9a-f]{2}/[0-9a-f]{64}\.png))",
          guarded([&svc](const httplib::Request& req, httplib::Response& res) {
            res.set_content(svc.asset(req.matches[1].str()), "image/png");
          }));
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  port_ = port == 0 ? srv.bind_to_any_port(host) : (srv.bind_to_port(host, port) ? port : -1);
  if (port_ < 0) {
    throw Error(Errc::IoError, "cannot bind", host + ":" + std::to_string(port));
  }
  return port_;
}

void HttpServer::listen() {
  {
    std::lock_guard lock(sweep_mu_);
    stopping_ = false;
  }
  std::int64_t interval = service_.config().sweep_interval_s;
  sweeper_ = std::thread([this, interval] {
    std::unique_lock lock(sweep_mu_);
    while (!sweep_cv_.wait_for(lock, std::chrono::seconds(interval), [this] { return stopping_; })) {
      lock.unlock();
      try {
        service_.expire_sessions();
      } catch (const Error&) {
        // Storage hiccups are retried on the next sweep.
      }
      lock.lock();
    }
  });
  impl_->server.listen_after_bind();
  {
    std::lock_guard lock(sweep_mu_);
    stopping_ = true;
  }
  sweep_cv_.notify_all();
  sweeper_.join();
}

int HttpServer::start(const std::string& host, int port) {
  int bound = bind(host, port);
  thread_ = std::thread([this] { listen(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace remixlab::service
