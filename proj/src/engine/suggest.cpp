#include <algorithm>
#include <cmath>

#include "namesound/engine.hpp"
#include "namesound/error.hpp"

namespace namesound::engine {
namespace {

struct Scored {
  Name name;
  double score;
  std::optional<double> distance;
};

std::vector<Suggestion> rank(std::vector<Scored> items, std::size_t k_out) {
  std::sort(items.begin(), items.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.name < b.name;
  });
  if (items.size() > k_out) items.erase(items.begin() + static_cast<std::ptrdiff_t>(k_out), items.end());
  std::vector<Suggestion> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.push_back({std::move(items[i].name), items[i].distance, items[i].score, i + 1});
  }
  return out;
}

void require_k_out(std::size_t k_out) {
  if (k_out == 0) throw Error(ErrorKind::InvalidArgument, "k_out must be at least 1");
}

}  // namespace

void SuggestConfig::validate() const {
  if (k_neighbors == 0) throw Error(ErrorKind::InvalidArgument, "k_neighbors must be at least 1");
  if (k_out == 0) throw Error(ErrorKind::InvalidArgument, "k_out must be at least 1");
  if (!(distance_threshold >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "distance threshold must be a non-negative number");
  }
}

std::vector<Suggestion> suggest_spoken(const Name& name, const VectorIndex& index,
                                       const embed::Embedding& query_embedding, const SuggestConfig& cfg) {
  cfg.validate();
  if (query_embedding.backend() != index.backend()) {
    throw Error(ErrorKind::DimensionMismatch, "query embedding backend differs from the index");
  }
  const auto neighbors = index.knn(query_embedding.vector(), cfg.k_neighbors, name.normalized());
  std::vector<Scored> survivors;
  for (const auto& n : neighbors) {
    if (n.distance > cfg.distance_threshold) continue;
    survivors.push_back(
        {n.name, static_cast<double>(cfg.ordering.score(name.normalized(), n.name.normalized())), n.distance});
  }
  return rank(std::move(survivors), cfg.k_out);
}

PhoneticIndex::PhoneticIndex(const NameCorpus& corpus, phonetics::Algorithm algo) : algo_(algo) {
  for (const auto& n : corpus) {
    if (phonetics::letters_only(n.normalized()).empty()) continue;
    const auto code = phonetics::encode(algo, n.normalized());
    by_code_[code.primary].push_back(n);
    if (code.secondary && *code.secondary != code.primary) by_code_[*code.secondary].push_back(n);
  }
}

std::vector<Name> PhoneticIndex::matches(const Name& name) const {
  const auto code = phonetics::encode(algo_, name.normalized());
  std::vector<Name> out;
  auto collect = [&](const std::string& key) {
    auto it = by_code_.find(key);
    if (it == by_code_.end()) return;
    for (const auto& n : it->second) {
      if (n != name) out.push_back(n);
    }
  };
  collect(code.primary);
  if (code.secondary && *code.secondary != code.primary) collect(*code.secondary);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Suggestion> suggest_phonetic(const Name& name, const PhoneticIndex& index, std::size_t k_out) {
  require_k_out(k_out);
  std::vector<Scored> items;
  for (auto& n : index.matches(name)) {
    const double d = static_cast<double>(stringdist::edit_distance(name.normalized(), n.normalized()));
    items.push_back({std::move(n), d, std::nullopt});
  }
  return rank(std::move(items), k_out);
}

std::vector<Suggestion> suggest_phonetic(const Name& name, const NameCorpus& corpus, phonetics::Algorithm algo,
                                         std::size_t k_out) {
  return suggest_phonetic(name, PhoneticIndex(corpus, algo), k_out);
}

std::vector<Suggestion> suggest_string(const Name& name, const NameCorpus& corpus, stringdist::Metric metric,
                                       std::size_t k_out) {
  require_k_out(k_out);
  const std::string& q = name.normalized();
  std::vector<Scored> items;
  if (metric == stringdist::Metric::JaroWinkler) {
    std::vector<Scored> by_similarity;
    for (const auto& n : corpus) {
      if (n == name) continue;
      by_similarity.push_back({n, -stringdist::jaro_winkler_similarity(q, n.normalized()), std::nullopt});
    }
    const std::size_t take = std::min(k_out, by_similarity.size());
    std::partial_sort(by_similarity.begin(), by_similarity.begin() + static_cast<std::ptrdiff_t>(take),
                      by_similarity.end(), [](const Scored& a, const Scored& b) {
                        if (a.score != b.score) return a.score < b.score;
                        return a.name < b.name;
                      });
    by_similarity.erase(by_similarity.begin() + static_cast<std::ptrdiff_t>(take), by_similarity.end());
    for (auto& s : by_similarity) {
      s.score = static_cast<double>(stringdist::edit_distance(q, s.name.normalized()));
      items.push_back(std::move(s));
    }
  } else {
    const bool dl = metric == stringdist::Metric::DamerauLevenshtein;
    for (const auto& n : corpus) {
      const std::size_t d =
          dl ? stringdist::damerau_levenshtein(q, n.normalized()) : stringdist::edit_distance(q, n.normalized());
      if (d >= 1 && d <= 3) items.push_back({n, static_cast<double>(d), std::nullopt});
    }
  }
  return rank(std::move(items), k_out);
}

}  // namespace namesound::engine
