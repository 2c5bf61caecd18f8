#pragma once

#include <string>
#include <string_view>

#include "remixlab/kb/knowledge_base.hpp"

namespace remixlab::kb {

/// Header line followed by one line per entry. Embeddings are stored
/// sparsely as parallel index/value arrays.
std::string serialize_kb(const KnowledgeBase& kb);

/// Throws MalformedKnowledgeBase with "line N" as location.
KnowledgeBase deserialize_kb(std::string_view text);

KnowledgeBase load_kb(const std::string& path);
void save_kb(const KnowledgeBase& kb, const std::string& path);

}  // namespace remixlab::kb
