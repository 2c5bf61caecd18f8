#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace remixlab {

/// Typed failure categories surfaced by every layer. The HTTP layer maps
/// these onto status codes, the CLI onto exit messages.
enum class Errc {
  MalformedArchive,
  MalformedProject,
  SchemaViolation,
  DanglingReference,
  CyclicStack,
  EmptyProject,
  EmptyCorpus,
  UnknownId,
  DuplicateId,
  DuplicateEdge,
  KindViolation,
  InvalidArgument,
  MalformedGraphDocument,
  MalformedRecord,
  MalformedKnowledgeBase,
  EmbedderMismatch,
  SessionResolved,
  ModerationBlocked,
  BackendUnavailable,
  TargetNotInProject,
  ImageBackendUnavailable,
  NotFound,
  Conflict,
  PayloadTooLarge,
  StorageUnavailable,
  MalformedSessionDocument,
  ConfigError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string location = {})
      : std::runtime_error(compose(code, message, location)),
        code_(code),
        detail_(message),
        location_(std::move(location)) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  // Byte offset, key path, or line reference; empty when not applicable.
  const std::string& location() const noexcept { return location_; }

 private:
  static std::string compose(Errc code, const std::string& message,
                             const std::string& location);

  Errc code_;
  std::string detail_;
  std::string location_;
};

}  // namespace remixlab
