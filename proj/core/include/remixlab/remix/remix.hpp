#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "remixlab/graph/visual_graph.hpp"
#include "remixlab/ids.hpp"
#include "remixlab/scaffold/backend.hpp"
#include "remixlab/scaffold/moderation.hpp"

namespace remixlab::remix {

struct RemixRequest {
  std::string session_ref;
  std::string utterance;
  // Empty when the graph has no canvas yet.
  CanvasId target_canvas;
  std::string project_name;
};

struct NodeProposal {
  std::string label;
  std::string description;
  // Role-play preamble, the proposal itself and the project context.
  std::string image_prompt;
  std::string negative_prompt;
  std::optional<std::string> image_ref;
  // Set when rendering was attempted but the image backend was down.
  bool image_unavailable = false;

  friend bool operator==(const NodeProposal&, const NodeProposal&) = default;
};

/// Terms from the shipped negative-prompt file, in file order.
const std::vector<std::string>& negative_prompt_terms();
std::string default_negative_prompt();

/// Adds any shipped negative term missing from the proposal's negative
/// prompt, keeping its own terms first.
void attach_negative_terms(NodeProposal& proposal);

/// The thing the learner asks for: "I want an energy ball in this soccer
/// game" gives "energy ball". Falls back to the trimmed utterance.
std::string subject_of(std::string_view utterance);

/// Exactly two distinct proposals without images. Malformed, duplicate or
/// blocked backend proposals are replaced by the deterministic templated
/// variants; every prompt carries the preamble, the canvas title and the
/// character names.
///
/// Errors: InvalidArgument (empty utterance), UnknownId (target canvas not
/// in the graph), ModerationBlocked (utterance, checked before any backend
/// call, or a composed proposal), BackendUnavailable.
std::array<NodeProposal, 2> derive_image_prompts(
    const RemixRequest& request, const graph::VisualGraph& graph,
    scaffold::Backend& backend, const scaffold::Moderator& moderator = {});

/// Candidate edges for a node already in the graph, each with origin
/// RemixSuggested. Backend output is filtered to edges touching the new
/// node that the adjacency matrix allows and the graph lacks. When no
/// candidate involves a computing-concept node but one could be wired, the
/// first such wiring is added. An unreachable backend yields only that
/// rule-based candidate.
///
/// Errors: UnknownId (node not in the graph).
std::vector<graph::GraphEdge> suggest_edges(const graph::VisualGraph& graph,
                                            const NodeId& new_node,
                                            scaffold::Backend& backend);

nlohmann::json proposal_to_json(const NodeProposal& p);
/// Errors: MalformedSessionDocument.
NodeProposal proposal_from_json(const nlohmann::json& j);

}  // namespace remixlab::remix
