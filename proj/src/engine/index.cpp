#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "namesound/engine.hpp"
#include "namesound/error.hpp"

namespace namesound::engine {

VectorIndex build_index(std::span<const embed::Embedding> embeddings) {
  if (embeddings.empty()) throw Error(ErrorKind::Empty, "cannot build an index from no embeddings");
  VectorIndex index;
  index.backend_ = embeddings.front().backend();
  index.dim_ = embeddings.front().dim();
  std::vector<std::size_t> order(embeddings.size());
  std::iota(order.begin(), order.end(), 0);
  for (const auto& e : embeddings) {
    if (e.backend() != index.backend_ || e.dim() != index.dim_) {
      throw Error(ErrorKind::DimensionMismatch, "embedding '" + e.name().normalized() + "' has dim " +
                                                    std::to_string(e.dim()) + ", index dim is " +
                                                    std::to_string(index.dim_));
    }
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return embeddings[a].name() < embeddings[b].name(); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (embeddings[order[i]].name() == embeddings[order[i - 1]].name()) {
      throw Error(ErrorKind::DuplicateName, "'" + embeddings[order[i]].name().normalized() + "' indexed twice");
    }
  }
  index.names_.reserve(order.size());
  index.data_.reserve(order.size() * index.dim_);
  for (std::size_t i : order) {
    index.names_.push_back(embeddings[i].name());
    const auto& v = embeddings[i].vector();
    index.data_.insert(index.data_.end(), v.begin(), v.end());
  }
  return index;
}

std::vector<Neighbor> VectorIndex::knn(std::span<const double> query, std::size_t k,
                                       std::optional<std::string_view> exclude) const {
  if (query.size() != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                "query dim " + std::to_string(query.size()) + " != index dim " + std::to_string(dim_));
  }
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");

  std::optional<std::string> excluded;
  if (exclude) excluded = Name::parse_lenient(*exclude).normalized();

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (excluded && names_[i].normalized() == *excluded) continue;
    const double* v = data_.data() + i * dim_;
    double acc = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double d = query[j] - v[j];
      acc += d * d;
    }
    scored.emplace_back(std::sqrt(acc), i);
  }
  // Names are stored sorted, so the index breaks distance ties by name.
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end());

  std::vector<Neighbor> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back({names_[scored[i].second], scored[i].first});
  return out;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::vector<Neighbor>> knn_batch(const VectorIndex& index, std::span<const KnnQuery> queries,
                                             std::size_t k, std::size_t threads) {
  std::vector<std::vector<Neighbor>> results(queries.size());
  parallel_for(queries.size(), threads, [&](std::size_t i) {
    const auto& q = queries[i];
    results[i] = index.knn(q.vector, k,
                           q.exclude ? std::optional<std::string_view>(*q.exclude) : std::nullopt);
  });
  return results;
}

}  // namespace namesound::engine
