#include "remixlab/remix/image.hpp"

#include <httplib.h>
#include <zlib.h>

#include <array>
#include <cstdlib>
#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"
#include "remixlab/util/hash.hpp"
#include "util/http.hpp"

namespace remixlab::remix {
namespace {

constexpr std::string_view kPngSignature{"\x89PNG\r\n\x1a\n", 8};

// 3x5 glyphs for 0-9a-f, one row per 3 bits, top row first.
constexpr std::array<std::array<std::uint8_t, 5>, 16> kHexGlyphs{{
    {7, 5, 5, 5, 7}, {2, 6, 2, 2, 7}, {7, 1, 7, 4, 7}, {7, 1, 7, 1, 7},
    {5, 5, 7, 1, 1}, {7, 4, 7, 1, 7}, {7, 4, 7, 5, 7}, {7, 1, 1, 1, 1},
    {7, 5, 7, 5, 7}, {7, 5, 7, 1, 7}, {7, 5, 7, 5, 5}, {6, 5, 6, 5, 6},
    {7, 4, 4, 4, 7}, {6, 5, 5, 5, 6}, {7, 4, 7, 4, 7}, {7, 4, 7, 4, 4},
}};

constexpr std::size_t kLabelDigits = 8;

void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out += static_cast<char>((v >> shift) & 0xff);
  }
}

void put_chunk(std::string& out, std::string_view type, std::string_view data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  std::string body(type);
  body += data;
  out += body;
  uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(body.data()),
                    static_cast<uInt>(body.size()));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return 0;
}

}  // namespace

std::string encode_png(int width, int height, std::string_view rgb) {
  if (width <= 0 || height <= 0 ||
      rgb.size() != static_cast<std::size_t>(width) * height * 3) {
    throw Error(Errc::InvalidArgument, "pixel buffer does not match the image size");
  }
  std::string raw;
  raw.reserve(static_cast<std::size_t>(height) * (width * 3 + 1));
  for (int y = 0; y < height; ++y) {
    raw += '\0';  // filter: none
    raw += rgb.substr(static_cast<std::size_t>(y) * width * 3, width * 3);
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  std::string packed(packed_size, '\0');
  if (compress2(reinterpret_cast<Bytef*>(packed.data()), &packed_size,
                reinterpret_cast<const Bytef*>(raw.data()),
                static_cast<uLong>(raw.size()), Z_BEST_COMPRESSION) != Z_OK) {
    throw Error(Errc::InvalidArgument, "zlib compression failed");
  }
  packed.resize(packed_size);

  std::string ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(width));
  put_u32(ihdr, static_cast<std::uint32_t>(height));
  ihdr += std::string{'\x08', '\x02', '\0', '\0', '\0'};  // 8-bit RGB

  std::string out(kPngSignature);
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", packed);
  put_chunk(out, "IEND", "");
  return out;
}

std::string StubImageBackend::generate(const ImageRequest& request) {
  const int w = request.width;
  const int h = request.height;
  if (w <= 0 || h <= 0 || request.prompt_hash.size() < kLabelDigits) {
    throw Error(Errc::InvalidArgument, "image request needs a size and a prompt hash");
  }
  const std::string& hash = request.prompt_hash;
  // Light background from the first three hash bytes.
  std::array<char, 3> bg{};
  for (int i = 0; i < 3; ++i) {
    int byte = hex_value(hash[2 * i]) * 16 + hex_value(hash[2 * i + 1]);
    bg[i] = static_cast<char>(128 + byte / 2);
  }
  std::string rgb;
  rgb.reserve(static_cast<std::size_t>(w) * h * 3);
  for (int i = 0; i < w * h; ++i) rgb.append(bg.data(), 3);

  // Glyph cells are 4 units wide (3 + gap) and 5 tall; scale to fit.
  int scale = std::max(1, std::min(w / (4 * static_cast<int>(kLabelDigits) + 1), h / 7));
  int text_w = (4 * static_cast<int>(kLabelDigits) - 1) * scale;
  int x0 = std::max(0, (w - text_w) / 2);
  int y0 = std::max(0, (h - 5 * scale) / 2);
  for (std::size_t d = 0; d < kLabelDigits; ++d) {
    const auto& glyph = kHexGlyphs[hex_value(hash[d])];
    for (int row = 0; row < 5; ++row) {
      for (int col = 0; col < 3; ++col) {
        if (!((glyph[row] >> (2 - col)) & 1)) continue;
        for (int dy = 0; dy < scale; ++dy) {
          for (int dx = 0; dx < scale; ++dx) {
            int x = x0 + (static_cast<int>(d) * 4 + col) * scale + dx;
            int y = y0 + row * scale + dy;
            if (x >= w || y >= h) continue;
            std::size_t at = (static_cast<std::size_t>(y) * w + x) * 3;
            rgb[at] = rgb[at + 1] = rgb[at + 2] = '\x20';
          }
        }
      }
    }
  }
  return encode_png(w, h, rgb);
}

std::optional<ImageClientConfig> image_config_from_env() {
  std::string endpoint = util::env_or("REMIXLAB_IMAGE_ENDPOINT");
  if (endpoint.empty()) return std::nullopt;
  ImageClientConfig cfg;
  cfg.endpoint = endpoint;
  cfg.api_key = util::env_or("REMIXLAB_IMAGE_API_KEY");
  cfg.model = util::env_or("REMIXLAB_IMAGE_MODEL", "stable-diffusion");
  std::string timeout = util::env_or("REMIXLAB_IMAGE_TIMEOUT_MS");
  if (!timeout.empty()) cfg.timeout = std::chrono::milliseconds(std::atoll(timeout.c_str()));
  return cfg;
}

HttpImageBackend::HttpImageBackend(ImageClientConfig config) : config_(std::move(config)) {
  util::split_url(config_.endpoint, "/generate");
}

std::string HttpImageBackend::generate(const ImageRequest& request) {
  auto [base, path] = util::split_url(config_.endpoint, "/generate");
  httplib::Client client(base);
  util::apply_timeout(client, config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  nlohmann::json body{{"model", config_.model},
                      {"prompt", request.prompt},
                      {"negative_prompt", request.negative_prompt},
                      {"width", request.width},
                      {"height", request.height}};
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw Error(Errc::ImageBackendUnavailable, httplib::to_string(res.error()), config_.endpoint);
  }
  if (res->status != 200) {
    throw Error(Errc::ImageBackendUnavailable, "HTTP " + std::to_string(res->status),
                config_.endpoint);
  }
  if (res->body.compare(0, kPngSignature.size(), kPngSignature) != 0) {
    throw Error(Errc::ImageBackendUnavailable, "reply is not a PNG image", config_.endpoint);
  }
  return res->body;
}

std::unique_ptr<ImageBackend> image_backend_from_env() {
  if (auto cfg = image_config_from_env()) {
    return std::make_unique<HttpImageBackend>(std::move(*cfg));
  }
  return std::make_unique<StubImageBackend>();
}

std::string canonical_prompt(const NodeProposal& proposal) {
  // nlohmann::json objects keep keys sorted.
  nlohmann::json j{{"image_prompt", proposal.image_prompt},
                   {"negative_prompt", proposal.negative_prompt}};
  return j.dump();
}

std::string prompt_hash(const NodeProposal& proposal) {
  return util::sha256_hex(canonical_prompt(proposal));
}

NodeProposal render_node_image(NodeProposal proposal, ImageBackend& backend,
                               AssetStore& store,
                               const scaffold::Moderator& moderator) {
  attach_negative_terms(proposal);
  for (const std::string* text :
       {&proposal.label, &proposal.description, &proposal.image_prompt}) {
    auto m = moderator.moderate(*text);
    if (m.blocked()) {
      throw Error(Errc::ModerationBlocked, "proposal text is not allowed",
                  std::string(to_string(*m.category)));
    }
  }
  std::string hash = prompt_hash(proposal);
  std::string ref = AssetStore::ref_for(hash);
  proposal.image_unavailable = false;
  if (store.contains(ref)) {
    proposal.image_ref = ref;
    return proposal;
  }
  std::string png;
  try {
    png = backend.generate({proposal.image_prompt, proposal.negative_prompt, hash});
  } catch (const Error& e) {
    if (e.code() != Errc::ImageBackendUnavailable) throw;
    proposal.image_ref.reset();
    proposal.image_unavailable = true;
    return proposal;
  }
  proposal.image_ref = store.put(hash, png);
  return proposal;
}

}  // namespace remixlab::remix
