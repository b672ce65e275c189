#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "namesound/corpus.hpp"
#include "namesound/embed.hpp"
#include "namesound/phonetics.hpp"
#include "namesound/stringdist.hpp"

namespace namesound::engine {

struct Neighbor {
  Name name;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Immutable exact-search index over one embedding backend. Vectors are
/// stored contiguously in name order.
class VectorIndex {
 public:
  std::size_t size() const noexcept { return names_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  embed::Backend backend() const noexcept { return backend_; }
  const std::vector<Name>& names() const noexcept { return names_; }
  std::span<const double> vector(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }

  /// Exact Euclidean neighbors, nearest first, ties by name. `exclude` is
  /// dropped before selection. Throws Error(DimensionMismatch) and
  /// Error(InvalidArgument) for k = 0.
  std::vector<Neighbor> knn(std::span<const double> query, std::size_t k,
                            std::optional<std::string_view> exclude = std::nullopt) const;

 private:
  friend VectorIndex build_index(std::span<const embed::Embedding> embeddings);

  std::vector<Name> names_;
  std::vector<double> data_;
  std::size_t dim_ = 0;
  embed::Backend backend_ = embed::Backend::MelGrid12288;
};

/// Throws Error(Empty), Error(DimensionMismatch) on mixed backends or dims,
/// Error(DuplicateName).
VectorIndex build_index(std::span<const embed::Embedding> embeddings);

struct KnnQuery {
  std::vector<double> vector;
  std::optional<std::string> exclude;
};

/// Runs queries concurrently; result i answers query i.
std::vector<std::vector<Neighbor>> knn_batch(const VectorIndex& index, std::span<const KnnQuery> queries,
                                             std::size_t k, std::size_t threads = 0);

struct SuggestConfig {
  std::size_t k_neighbors = 10;
  double distance_threshold = 1.0;
  stringdist::OrderingFunction ordering{};
  std::size_t k_out = 10;

  /// Throws Error(InvalidArgument) when a field is out of range.
  void validate() const;
};

struct Suggestion {
  Name candidate;
  std::optional<double> embedding_distance;
  double ordering_score = 0.0;
  std::size_t rank = 0;
};

/// Nearest neighbors of the query's embedding within the threshold, then
/// reordered by cfg.ordering.
std::vector<Suggestion> suggest_spoken(const Name& name, const VectorIndex& index,
                                       const embed::Embedding& query_embedding, const SuggestConfig& cfg);

/// Corpus names grouped by phonetic code, built once per (corpus, algorithm).
/// Names with no encodable letters are left out.
class PhoneticIndex {
 public:
  PhoneticIndex(const NameCorpus& corpus, phonetics::Algorithm algo);

  phonetics::Algorithm algorithm() const noexcept { return algo_; }
  /// Candidates sharing a code with `name`, excluding `name` itself.
  /// Throws Error(NoEncodableContent).
  std::vector<Name> matches(const Name& name) const;

 private:
  phonetics::Algorithm algo_;
  std::map<std::string, std::vector<Name>> by_code_;
};

std::vector<Suggestion> suggest_phonetic(const Name& name, const PhoneticIndex& index, std::size_t k_out);
std::vector<Suggestion> suggest_phonetic(const Name& name, const NameCorpus& corpus, phonetics::Algorithm algo,
                                         std::size_t k_out);

/// Edit and DL keep distances 1..3; Jaro-Winkler keeps the k_out most
/// similar and reorders them by edit distance.
std::vector<Suggestion> suggest_string(const Name& name, const NameCorpus& corpus, stringdist::Metric metric,
                                       std::size_t k_out);

/// Applies `fn` to every index in [0, n) on up to `threads` workers
/// (0 = hardware concurrency).
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace namesound::engine
