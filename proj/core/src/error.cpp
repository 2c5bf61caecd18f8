#include "remixlab/error.hpp"

namespace remixlab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedArchive: return "MalformedArchive";
    case Errc::MalformedProject: return "MalformedProject";
    case Errc::SchemaViolation: return "SchemaViolation";
    case Errc::DanglingReference: return "DanglingReference";
    case Errc::CyclicStack: return "CyclicStack";
    case Errc::EmptyProject: return "EmptyProject";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::UnknownId: return "UnknownId";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::KindViolation: return "KindViolation";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MalformedGraphDocument: return "MalformedGraphDocument";
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::MalformedKnowledgeBase: return "MalformedKnowledgeBase";
    case Errc::EmbedderMismatch: return "EmbedderMismatch";
    case Errc::SessionResolved: return "SessionResolved";
    case Errc::ModerationBlocked: return "ModerationBlocked";
    case Errc::BackendUnavailable: return "BackendUnavailable";
    case Errc::TargetNotInProject: return "TargetNotInProject";
    case Errc::ImageBackendUnavailable: return "ImageBackendUnavailable";
    case Errc::NotFound: return "NotFound";
    case Errc::Conflict: return "Conflict";
    case Errc::PayloadTooLarge: return "PayloadTooLarge";
    case Errc::StorageUnavailable: return "StorageUnavailable";
    case Errc::MalformedSessionDocument: return "MalformedSessionDocument";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

std::string Error::compose(Errc code, const std::string& message,
                           const std::string& location) {
  std::string out(to_string(code));
  out += ": ";
  out += message;
  if (!location.empty()) {
    out += " (at ";
    out += location;
    out += ")";
  }
  return out;
}

}  // namespace remixlab
