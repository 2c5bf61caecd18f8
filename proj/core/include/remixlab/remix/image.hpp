#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remixlab/remix/asset_store.hpp"
#include "remixlab/remix/remix.hpp"

namespace remixlab::remix {

struct ImageRequest {
  std::string prompt;
  std::string negative_prompt;
  // sha256 of the canonical prompt serialization.
  std::string prompt_hash;
  int width = 256;
  int height = 256;
};

class ImageBackend {
 public:
  virtual ~ImageBackend() = default;
  virtual std::string name() const = 0;
  /// PNG bytes. Throws ImageBackendUnavailable when the model is down.
  virtual std::string generate(const ImageRequest& request) = 0;
};

/// Placeholder raster: a colour derived from the hash with the first eight
/// hex digits of the prompt hash drawn on it.
class StubImageBackend : public ImageBackend {
 public:
  std::string name() const override { return "stub"; }
  std::string generate(const ImageRequest& request) override;
};

struct ImageClientConfig {
  std::string endpoint;
  std::string api_key;
  std::string model;
  std::chrono::milliseconds timeout{60000};
};

/// Reads REMIXLAB_IMAGE_ENDPOINT, REMIXLAB_IMAGE_API_KEY,
/// REMIXLAB_IMAGE_MODEL and REMIXLAB_IMAGE_TIMEOUT_MS.
std::optional<ImageClientConfig> image_config_from_env();

/// POSTs {"model","prompt","negative_prompt","width","height"} and expects
/// a PNG body back.
class HttpImageBackend : public ImageBackend {
 public:
  explicit HttpImageBackend(ImageClientConfig config);
  std::string name() const override { return "http:" + config_.model; }
  std::string generate(const ImageRequest& request) override;

 private:
  ImageClientConfig config_;
};

std::unique_ptr<ImageBackend> image_backend_from_env();

/// Sorted-key JSON of the image prompt and negative prompt.
std::string canonical_prompt(const NodeProposal& proposal);
std::string prompt_hash(const NodeProposal& proposal);

/// 8-bit RGB, row-major, 3 bytes per pixel.
std::string encode_png(int width, int height, std::string_view rgb);

/// Attaches the negative terms, re-checks moderation, then reuses the
/// stored asset for the prompt hash or asks the backend for one. A down
/// backend returns the proposal without image_ref and image_unavailable
/// set.
///
/// Errors: ModerationBlocked, StorageUnavailable.
NodeProposal render_node_image(NodeProposal proposal, ImageBackend& backend,
                               AssetStore& store,
                               const scaffold::Moderator& moderator = {});

}  // namespace remixlab::remix
