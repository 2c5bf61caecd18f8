#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <string_view>

#include "remixlab/scaffold/engine.hpp"

namespace remixlab::scaffold {

nlohmann::json highlight_to_json(const BlockGraphHighlight& h);
nlohmann::json response_to_json(const ScaffoldResponse& r);
nlohmann::json turn_to_json(const Turn& t);
nlohmann::json dialogue_to_json(const DialogueSession& s);

/// Throws MalformedSessionDocument with a JSON pointer as location.
BlockGraphHighlight highlight_from_json(const nlohmann::json& j, const std::string& at = "");
ScaffoldResponse response_from_json(const nlohmann::json& j, const std::string& at = "");
DialogueSession dialogue_from_json(const nlohmann::json& j, const std::string& at = "");

/// "<state> -> <state>" trace plus the agent text, one block per turn.
std::string render_transcript(const DialogueSession& s);

}  // namespace remixlab::scaffold
