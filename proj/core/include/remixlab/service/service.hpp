#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"
#include "remixlab/kb/knowledge_base.hpp"
#include "remixlab/remix/asset_store.hpp"
#include "remixlab/remix/image.hpp"
#include "remixlab/sb3/block_tree.hpp"
#include "remixlab/scaffold/backend.hpp"
#include "remixlab/scaffold/moderation.hpp"
#include "remixlab/service/config.hpp"
#include "remixlab/service/session_store.hpp"

namespace remixlab::service {

/// HTTP status for a typed error: 404 NotFound, 409 Conflict and
/// SessionResolved, 413 PayloadTooLarge, 422 ModerationBlocked, 503 for
/// unavailable backends or storage, 500 for internal faults, 400 for the
/// remaining input errors.
int http_status(Errc code) noexcept;

/// {"error":{"code":"NotFound","message":"...","location":"..."}}
nlohmann::json error_body(const Error& e);

nlohmann::json edge_to_json(const graph::GraphEdge& e);

struct ServiceDeps {
  scaffold::Backend* text = nullptr;
  // Optional separate model for response checks.
  scaffold::Backend* judge = nullptr;
  remix::ImageBackend* image = nullptr;
  std::shared_ptr<const kb::KnowledgeBase> kb;
  std::shared_ptr<const scaffold::Moderator> moderator;
  std::unique_ptr<SessionStore> store;
  // Unix seconds; injectable for expiry tests.
  std::function<std::int64_t()> clock;
  // Session id source; random 128-bit hex by default.
  std::function<std::string()> new_id;
};

/// Every HTTP route maps to one method here; the JSON documents returned
/// are exactly the response bodies. Calls on different sessions run in
/// parallel; a second mutating call on a session that is busy fails with
/// Conflict instead of waiting.
class Service {
 public:
  /// Errors: InvalidArgument (no text backend), StorageUnavailable.
  Service(ServiceConfig config, ServiceDeps deps);
  ~Service();

  const ServiceConfig& config() const noexcept { return config_; }

  /// Archive (.sb3 zip or bare project.json). Returns session_id, state,
  /// project summary, CT report, category stats and reference graph.
  /// Errors: PayloadTooLarge, parse errors, StorageUnavailable.
  nlohmann::json create_session(std::string_view archive, std::string project_name = {});
  nlohmann::json get_session(const std::string& id) const;
  nlohmann::json list_sessions() const;
  void delete_session(const std::string& id);

  nlohmann::json get_graph(const std::string& id) const;
  /// Stores the learner graph even when it has violations and reports
  /// them. Errors: MalformedGraphDocument, NotFound, Conflict.
  nlohmann::json put_graph(const std::string& id, std::string_view graph_document);

  /// Body {"input":"utterance"|"got_it"|"dont_know","text":"..."}.
  /// Returns {"response":...,"state":...,"turn":N}.
  nlohmann::json chat_turn(const std::string& id, const nlohmann::json& body);

  /// Body {"utterance":"...","canvas":"<id>"?,"render_images":bool?}.
  /// Uses the learner graph when it has nodes, else the reference graph.
  nlohmann::json remix(const std::string& id, const nlohmann::json& body);

  /// Body {"node_id":"..."}; the node must be in the learner graph.
  nlohmann::json suggest_edges(const std::string& id, const nlohmann::json& body);

  /// {"session_id","state","turns":[...],"text":"..."}.
  nlohmann::json transcript(const std::string& id) const;

  /// PNG bytes of a stored asset. Errors: NotFound, InvalidArgument.
  std::string asset(std::string_view ref) const;

  /// Drops sessions idle for at least the configured TTL.
  std::vector<std::string> expire_sessions();

 private:
  friend class BusyGuard;
  // Throws Conflict when the session is already busy.
  void acquire(const std::string& id);
  void release(const std::string& id);
  std::shared_ptr<const sb3::BlockForest> forest_for(const std::string& archive_ref) const;
  SessionRecord load(const std::string& id) const;
  void save(SessionRecord& record);

  ServiceConfig config_;
  ServiceDeps deps_;
  remix::AssetStore assets_;
  std::unique_ptr<scaffold::ScaffoldEngine> engine_;

  std::mutex busy_mu_;
  std::set<std::string> busy_;

  mutable std::mutex forest_mu_;
  mutable std::map<std::string, std::shared_ptr<const sb3::BlockForest>> forests_;
};

}  // namespace remixlab::service
