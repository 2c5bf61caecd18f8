#include "remixlab/service/service.hpp"

#include <random>
#include <system_error>

#include "remixlab/ct/analyzer.hpp"
#include "remixlab/ct/categories.hpp"
#include "remixlab/graph/extract.hpp"
#include "remixlab/graph/graph_io.hpp"
#include "remixlab/graph/validate.hpp"
#include "remixlab/remix/remix.hpp"
#include "remixlab/sb3/project.hpp"
#include "remixlab/scaffold/engine.hpp"
#include "remixlab/scaffold/session_io.hpp"
#include "remixlab/util/fs.hpp"
#include "remixlab/util/hash.hpp"

namespace remixlab::service {

using nlohmann::json;

// Marks a session busy for the lifetime of a mutating call.
class BusyGuard {
 public:
  BusyGuard(Service& s, std::string id) : service_(s), id_(std::move(id)) { service_.acquire(id_); }
  ~BusyGuard() { service_.release(id_); }
  BusyGuard(const BusyGuard&) = delete;
  BusyGuard& operator=(const BusyGuard&) = delete;

 private:
  Service& service_;
  std::string id_;
};

namespace {

std::int64_t system_clock_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string random_id() {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 32; ++i) id += kHex[rng() & 15];
  return id;
}

std::string body_string(const json& body, const char* key, bool required) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) {
    if (required) throw Error(Errc::InvalidArgument, "missing field", std::string("/") + key);
    return {};
  }
  if (!it->is_string()) {
    throw Error(Errc::InvalidArgument, "expected a string", std::string("/") + key);
  }
  return it->get<std::string>();
}

void require_object(const json& body) {
  if (!body.is_object()) throw Error(Errc::InvalidArgument, "request body must be a JSON object");
}

json graph_summary(const graph::VisualGraph& g) {
  return {{"canvases", g.canvases.size()},
          {"nodes", g.nodes.size()},
          {"edges", g.edges.size()},
          {"document", graph::graph_to_json(g)}};
}

}  // namespace

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::NotFound: return 404;
    case Errc::Conflict:
    case Errc::SessionResolved: return 409;
    case Errc::PayloadTooLarge: return 413;
    case Errc::ModerationBlocked: return 422;
    case Errc::BackendUnavailable:
    case Errc::ImageBackendUnavailable:
    case Errc::StorageUnavailable: return 503;
    case Errc::TargetNotInProject:
    case Errc::IoError:
    case Errc::ConfigError:
    case Errc::EmbedderMismatch:
    case Errc::MalformedKnowledgeBase: return 500;
    default: return 400;
  }
}

json error_body(const Error& e) {
  return {{"error",
           {{"code", std::string(to_string(e.code()))},
            {"message", e.detail()},
            {"location", e.location()}}}};
}

json edge_to_json(const graph::GraphEdge& e) {
  return {{"id", e.id.str()},
          {"from", e.from.str()},
          {"to", e.to.str()},
          {"relation", std::string(graph::to_string(e.relation))},
          {"origin", std::string(graph::to_string(e.origin))}};
}

Service::Service(ServiceConfig config, ServiceDeps deps)
    : config_(std::move(config)), deps_(std::move(deps)), assets_(config_.assets_dir()) {
  if (!deps_.text) throw Error(Errc::InvalidArgument, "service needs a text backend");
  if (!deps_.moderator) deps_.moderator = std::make_shared<scaffold::Moderator>();
  if (!deps_.clock) deps_.clock = system_clock_seconds;
  if (!deps_.new_id) deps_.new_id = random_id;
  if (!deps_.store) deps_.store = std::make_unique<FileSessionStore>(config_.sessions_dir());
  std::error_code ec;
  std::filesystem::create_directories(config_.archives_dir(), ec);
  if (ec) {
    throw Error(Errc::StorageUnavailable, "cannot create archive directory",
                config_.archives_dir().string());
  }
  scaffold::EngineOptions options;
  options.max_loops = config_.max_loops;
  options.retrieval_k = config_.retrieval_k;
  engine_ = std::make_unique<scaffold::ScaffoldEngine>(*deps_.text, *deps_.moderator,
                                                       deps_.kb.get(), deps_.judge, options);
}

Service::~Service() = default;

void Service::acquire(const std::string& id) {
  std::lock_guard lock(busy_mu_);
  if (!busy_.insert(id).second) {
    throw Error(Errc::Conflict, "another request is updating this session", id);
  }
}

void Service::release(const std::string& id) {
  std::lock_guard lock(busy_mu_);
  busy_.erase(id);
}

SessionRecord Service::load(const std::string& id) const { return deps_.store->load(id); }

void Service::save(SessionRecord& record) {
  record.updated_at = std::max(record.created_at, deps_.clock());
  deps_.store->save(record);
}

std::shared_ptr<const sb3::BlockForest> Service::forest_for(const std::string& archive_ref) const {
  {
    std::lock_guard lock(forest_mu_);
    if (auto it = forests_.find(archive_ref); it != forests_.end()) return it->second;
  }
  std::filesystem::path path = config_.archives_dir() / (archive_ref + ".archive");
  std::string bytes;
  try {
    bytes = util::read_text_file(path);
  } catch (const Error&) {
    throw Error(Errc::StorageUnavailable, "project archive is missing", path.string());
  }
  auto forest = std::make_shared<const sb3::BlockForest>(
      sb3::build_block_tree(sb3::load_project(remixlab::as_bytes(bytes))));
  std::lock_guard lock(forest_mu_);
  return forests_.emplace(archive_ref, std::move(forest)).first->second;
}

json Service::create_session(std::string_view archive, std::string project_name) {
  if (archive.size() > config_.max_upload_bytes) {
    throw Error(Errc::PayloadTooLarge,
                "archive exceeds " + std::to_string(config_.max_upload_bytes) + " bytes");
  }
  sb3::ProjectModel project = sb3::load_project(remixlab::as_bytes(archive));
  auto forest = std::make_shared<const sb3::BlockForest>(sb3::build_block_tree(project));
  ct::CTReport report = ct::score_ct(*forest);

  std::string archive_ref = util::sha256_hex(archive);
  std::filesystem::path stored = config_.archives_dir() / (archive_ref + ".archive");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(stored, ec)) {
    try {
      util::write_file_atomic(stored, archive);
    } catch (const Error& e) {
      throw Error(Errc::StorageUnavailable, e.detail(), e.location());
    }
  }
  {
    std::lock_guard lock(forest_mu_);
    forests_.emplace(archive_ref, forest);
  }

  SessionRecord record;
  record.session_id = deps_.new_id();
  record.archive_ref = archive_ref;
  record.project_name = std::move(project_name);
  record.dialogue = engine_->start_session(*forest, {}, record.session_id, archive_ref);
  record.created_at = deps_.clock();
  save(record);

  return {{"session_id", record.session_id},
          {"state", std::string(scaffold::to_string(record.dialogue.state))},
          {"project",
           {{"name", record.project_name},
            {"archive_ref", archive_ref},
            {"sprites", forest->sprites.size()},
            {"scripts", forest->script_count()},
            {"blocks", forest->node_count()}}},
          {"ct_report", ct::report_to_json(report)},
          {"categories", ct::stats_to_json(ct::block_category_stats(*forest))},
          {"reference_graph", graph_summary(record.dialogue.reference_graph)}};
}

json Service::get_session(const std::string& id) const { return record_to_json(load(id)); }

json Service::list_sessions() const { return {{"sessions", deps_.store->list()}}; }

void Service::delete_session(const std::string& id) {
  BusyGuard guard(*this, id);
  if (!deps_.store->remove(id)) throw Error(Errc::NotFound, "no such session", id);
}

json Service::get_graph(const std::string& id) const {
  return graph::graph_to_json(load(id).dialogue.learner_graph);
}

json Service::put_graph(const std::string& id, std::string_view graph_document) {
  BusyGuard guard(*this, id);
  SessionRecord record = load(id);
  graph::VisualGraph g = graph::deserialize_graph(graph_document);
  auto violations = graph::validate_graph(g);
  record.dialogue.learner_graph = std::move(g);
  save(record);
  return {{"graph", graph::graph_to_json(record.dialogue.learner_graph)},
          {"violations", graph::violations_to_json(violations)}};
}

json Service::chat_turn(const std::string& id, const json& body) {
  require_object(body);
  std::string kind = body_string(body, "input", true);
  auto input_kind = scaffold::input_kind_from_string(kind);
  if (!input_kind) throw Error(Errc::InvalidArgument, "unknown input kind " + kind, "/input");
  scaffold::TurnInput input{*input_kind, body_string(body, "text", false)};

  BusyGuard guard(*this, id);
  SessionRecord record = load(id);
  auto forest = forest_for(record.archive_ref);
  scaffold::TurnResult result = engine_->handle_turn(record.dialogue, *forest, input);
  record.dialogue = std::move(result.session);
  save(record);
  return {{"response", scaffold::response_to_json(result.response)},
          {"state", std::string(scaffold::to_string(record.dialogue.state))},
          {"turn", record.dialogue.transcript.size()}};
}

json Service::remix(const std::string& id, const json& body) {
  require_object(body);
  std::string utterance = body_string(body, "utterance", true);
  std::string canvas = body_string(body, "canvas", false);
  bool render = true;
  if (auto it = body.find("render_images"); it != body.end()) {
    if (!it->is_boolean()) throw Error(Errc::InvalidArgument, "expected a boolean", "/render_images");
    render = it->get<bool>();
  }

  BusyGuard guard(*this, id);
  SessionRecord record = load(id);
  bool learner = !record.dialogue.learner_graph.nodes.empty();
  const graph::VisualGraph& g =
      learner ? record.dialogue.learner_graph : record.dialogue.reference_graph;
  if (canvas.empty() && !g.canvases.empty()) canvas = g.canvases.front().id.str();
  remix::RemixRequest request{id, utterance, CanvasId(canvas), record.project_name};
  auto proposals = remix::derive_image_prompts(request, g, *deps_.text, *deps_.moderator);
  record.proposals.assign(proposals.begin(), proposals.end());
  if (render && deps_.image) {
    for (auto& p : record.proposals) {
      p = remix::render_node_image(p, *deps_.image, assets_, *deps_.moderator);
    }
  }
  save(record);
  json out = json::array();
  for (const auto& p : record.proposals) out.push_back(remix::proposal_to_json(p));
  return {{"proposals", std::move(out)},
          {"context", learner ? "learner_graph" : "reference_graph"},
          {"canvas", canvas}};
}

json Service::suggest_edges(const std::string& id, const json& body) {
  require_object(body);
  NodeId node(body_string(body, "node_id", true));
  SessionRecord record = load(id);
  auto edges = remix::suggest_edges(record.dialogue.learner_graph, node, *deps_.text);
  json out = json::array();
  for (const auto& e : edges) out.push_back(edge_to_json(e));
  return {{"edges", std::move(out)}};
}

json Service::transcript(const std::string& id) const {
  SessionRecord record = load(id);
  json turns = json::array();
  for (const auto& t : record.dialogue.transcript) turns.push_back(scaffold::turn_to_json(t));
  return {{"session_id", id},
          {"state", std::string(scaffold::to_string(record.dialogue.state))},
          {"turns", std::move(turns)},
          {"text", scaffold::render_transcript(record.dialogue)}};
}

std::string Service::asset(std::string_view ref) const {
  auto bytes = assets_.read(ref);
  if (!bytes) throw Error(Errc::NotFound, "no such asset", std::string(ref));
  return *bytes;
}

std::vector<std::string> Service::expire_sessions() {
  return deps_.store->expire(config_.session_ttl_s, deps_.clock());
}

}  // namespace remixlab::service
