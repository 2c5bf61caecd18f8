#pragma once

#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "remixlab/service/service.hpp"

namespace remixlab::service {

/// Routes (all bodies JSON unless noted; see docs/api.md):
///   GET    /api/health
///   GET    /api/sessions
///   POST   /api/sessions?name=<project>       body: archive bytes
///   GET    /api/sessions/{id}
///   DELETE /api/sessions/{id}
///   GET    /api/sessions/{id}/graph
///   PUT    /api/sessions/{id}/graph
///   POST   /api/sessions/{id}/turns
///   POST   /api/sessions/{id}/remix
///   POST   /api/sessions/{id}/edges
///   GET    /api/sessions/{id}/transcript
///   GET    /api/assets/{xx}/{hash}.png        reply: image/png
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  /// Port 0 picks a free port. Returns the bound port.
  /// Errors: IoError (cannot bind).
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  /// bind() plus listen() on a background thread.
  int start(const std::string& host, int port);
  void stop();
  int port() const noexcept { return port_; }

 private:
  struct Impl;
  Service& service_;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  std::thread sweeper_;
  std::mutex sweep_mu_;
  std::condition_variable sweep_cv_;
  bool stopping_ = false;
  int port_ = 0;
};

}  // namespace remixlab::service
