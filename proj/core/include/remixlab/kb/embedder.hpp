#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace remixlab::kb {

using Embedding = std::vector<double>;

class Embedder {
 public:
  virtual ~Embedder() = default;
  /// Two embedders with the same id map every text to the same vector.
  virtual std::string id() const = 0;
  virtual std::size_t dimension() const = 0;
  /// Unit length, or all zeros when the text has no tokens.
  virtual Embedding embed(std::string_view text) const = 0;
};

inline constexpr std::size_t kDefaultDimension = 1024;

/// Term counts over FNV-1a hashed token buckets, weighted by smoothed
/// inverse document frequency, L2 normalized.
class HashedTfIdfEmbedder : public Embedder {
 public:
  /// Every bucket weighted 1.
  explicit HashedTfIdfEmbedder(std::size_t dimension = kDefaultDimension);
  explicit HashedTfIdfEmbedder(std::vector<double> idf);

  /// idf(b) = ln((1 + N) / (1 + df(b))) + 1 over the given documents.
  static HashedTfIdfEmbedder fit(const std::vector<std::string>& documents,
                                 std::size_t dimension = kDefaultDimension);

  std::string id() const override { return id_; }
  std::size_t dimension() const override { return idf_.size(); }
  Embedding embed(std::string_view text) const override;

  const std::vector<double>& idf() const noexcept { return idf_; }

  static std::size_t bucket(std::string_view token, std::size_t dimension);

 private:
  std::vector<double> idf_;
  std::string id_;
};

/// Plain cosine; 0 when either side is the zero vector.
double cosine(const Embedding& a, const Embedding& b);

}  // namespace remixlab::kb
