#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "namesound/corpus.hpp"
#include "namesound/embed.hpp"
#include "namesound/engine.hpp"

namespace namesound::eval {

inline constexpr std::array<std::size_t, 5> kPrecisionCutoffs{1, 2, 3, 5, 10};

/// Hits among the first k suggestions divided by k. Throws
/// Error(InvalidArgument) for k = 0.
double precision_at_k(std::span<const Name> suggestions, const std::set<Name>& truth, std::size_t k);

/// Fraction of `truth` found anywhere in `suggestions`. Throws
/// Error(EmptyTruth).
double recall(std::span<const Name> suggestions, const std::set<Name>& truth);

/// Ordered suggestion lists per query.
class RunResult {
 public:
  using Map = std::map<Name, std::vector<Name>, NameLess>;

  /// Throws Error(InvalidArgument) if the list repeats a name or contains
  /// the query, or the query is already present.
  void add(Name query, std::vector<Name> suggestions);

  const Map& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  Map entries_;
};

/// Rows `query<TAB>rank<TAB>candidate`, ranks 1-based and consecutive per
/// query. Blank lines and `#` comments are skipped.
RunResult parse_run(std::string_view text);
RunResult load_run(const std::filesystem::path& path);

struct QueryMetrics {
  Name query;
  std::size_t returned = 0;
  std::size_t hits = 0;
  std::array<double, kPrecisionCutoffs.size()> precision_at{};
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

QueryMetrics evaluate_query(const Name& query, std::span<const Name> suggestions, const std::set<Name>& truth);

struct MetricsReport {
  std::size_t n_queries = 0;
  /// Precision@10; see README.
  double accuracy = 0.0;
  double f1 = 0.0;
  std::array<double, kPrecisionCutoffs.size()> precision_at{};
  double recall = 0.0;

  double precision(std::size_t k) const;
};

/// Macro averages over per-query metrics.
MetricsReport aggregate(std::span<const QueryMetrics> per_query);

/// Throws Error(EmptyRun) for a run with no queries and
/// Error(MissingTruth) naming the first query without a truth entry.
MetricsReport evaluate_run(const RunResult& run, const SynonymTruth& truth);
std::vector<QueryMetrics> evaluate_run_per_query(const RunResult& run, const SynonymTruth& truth);

struct MethodSpec {
  enum class Kind { Spoken, Phonetic, String };

  Kind kind = Kind::Phonetic;
  phonetics::Algorithm algorithm = phonetics::Algorithm::Soundex;
  stringdist::Metric metric = stringdist::Metric::Edit;
  std::shared_ptr<const embed::EmbeddingSet> embeddings;
  engine::SuggestConfig config{};
  std::string label;
};

/// Tags: soundex, metaphone, dmetaphone, nysiis, mra, edit, dl, jw.
/// Throws Error(InvalidArgument).
MethodSpec phonetic_or_string_method(std::string_view tag, std::size_t k_out = 10);
MethodSpec spoken_method(std::shared_ptr<const embed::EmbeddingSet> embeddings, engine::SuggestConfig config = {});

/// Runs one method over every truth query. Spoken methods search the
/// embeddings of corpus names and need an embedding for every query; a
/// missing one raises Error(MissingEmbedding).
RunResult run_method(const MethodSpec& method, const NameCorpus& corpus, const SynonymTruth& truth,
                     std::size_t threads = 0);

struct MethodRow {
  std::string label;
  MetricsReport report;
  std::vector<QueryMetrics> per_query;
};

struct ComparisonTable {
  std::vector<MethodRow> rows;
};

ComparisonTable compare_methods(const NameCorpus& corpus, const SynonymTruth& truth,
                                std::span<const MethodSpec> methods, std::size_t threads = 0);

/// Header `method n_queries Accuracy F1 AP@1 AP@2 AP@3 AP@5 AP@10 Recall`,
/// tab-separated, values with four decimals.
std::string format_table_tsv(const ComparisonTable& table);
/// `method,query,returned,hits,p@1,p@2,p@3,p@5,p@10,precision,recall,f1`.
std::string format_per_query_csv(const ComparisonTable& table);

struct PcaPoint {
  Name name;
  double x = 0.0;
  double y = 0.0;
};

struct PcaResult {
  std::vector<PcaPoint> points;
  /// Sample variance captured by each component, descending.
  std::array<double, 2> variance{};
};

/// Projects mean-centered vectors onto the top two principal components.
/// Each component's largest-magnitude entry is made positive. Throws
/// Error(TooFew) below two embeddings and Error(DimensionMismatch).
PcaResult pca_2d(std::span<const embed::Embedding> embeddings);
/// Same, on bare rows.
PcaResult pca_2d(std::span<const Name> names, std::span<const std::vector<double>> rows);

}  // namespace namesound::eval
