#include "remixlab/kb/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "remixlab/error.hpp"
#include "remixlab/util/hash.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::kb {
namespace {

std::string make_id(const std::vector<double>& idf) {
  std::string canon;
  char buf[32];
  for (double v : idf) {
    std::snprintf(buf, sizeof buf, "%.17g,", v);
    canon += buf;
  }
  return "hashed-tfidf-" + std::to_string(idf.size()) + ":" +
         util::sha256_hex(canon).substr(0, 12);
}

}  // namespace

HashedTfIdfEmbedder::HashedTfIdfEmbedder(std::size_t dimension)
    : HashedTfIdfEmbedder(std::vector<double>(dimension, 1.0)) {}

HashedTfIdfEmbedder::HashedTfIdfEmbedder(std::vector<double> idf)
    : idf_(std::move(idf)) {
  if (idf_.empty()) throw Error(Errc::InvalidArgument, "embedder dimension must be positive");
  id_ = make_id(idf_);
}

HashedTfIdfEmbedder HashedTfIdfEmbedder::fit(const std::vector<std::string>& documents,
                                             std::size_t dimension) {
  if (dimension == 0) throw Error(Errc::InvalidArgument, "embedder dimension must be positive");
  std::vector<std::size_t> df(dimension, 0);
  for (const auto& doc : documents) {
    std::set<std::size_t> seen;
    for (const auto& tok : util::word_tokens(doc)) seen.insert(bucket(tok, dimension));
    for (std::size_t b : seen) ++df[b];
  }
  const double n = static_cast<double>(documents.size());
  std::vector<double> idf(dimension);
  for (std::size_t b = 0; b < dimension; ++b) {
    idf[b] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[b]))) + 1.0;
  }
  return HashedTfIdfEmbedder(std::move(idf));
}

std::size_t HashedTfIdfEmbedder::bucket(std::string_view token, std::size_t dimension) {
  return static_cast<std::size_t>(util::fnv1a64(token) % dimension);
}

Embedding HashedTfIdfEmbedder::embed(std::string_view text) const {
  Embedding v(idf_.size(), 0.0);
  for (const auto& tok : util::word_tokens(text)) v[bucket(tok, idf_.size())] += 1.0;
  double norm = 0;
  for (std::size_t b = 0; b < v.size(); ++b) {
    v[b] *= idf_[b];
    norm += v[b] * v[b];
  }
  if (norm > 0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

double cosine(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::EmbedderMismatch, "embedding dimensions differ");
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace remixlab::kb
