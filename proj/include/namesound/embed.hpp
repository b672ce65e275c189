#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "namesound/audio.hpp"
#include "namesound/speech.hpp"

namespace namesound::embed {

enum class Backend { MelGrid12288, Handcrafted136 };

inline constexpr std::size_t kMelGridDim = 12288;
inline constexpr std::size_t kHandcraftedDim = 136;

std::size_t dimension(Backend backend) noexcept;
/// "mel" or "hand".
std::string_view to_string(Backend backend) noexcept;
/// Throws Error(InvalidArgument) for an unknown tag.
Backend parse_backend(std::string_view tag);

class Embedding {
 public:
  /// Throws Error(DimensionMismatch) if the length does not match the
  /// backend, Error(InvalidArgument) on a non-finite entry.
  Embedding(speech::SpokenNameKey key, Backend backend, std::vector<double> vector);

  const speech::SpokenNameKey& key() const noexcept { return key_; }
  const Name& name() const noexcept { return key_.name(); }
  Backend backend() const noexcept { return backend_; }
  const std::vector<double>& vector() const noexcept { return vector_; }
  std::size_t dim() const noexcept { return vector_.size(); }

 private:
  speech::SpokenNameKey key_;
  Backend backend_;
  std::vector<double> vector_;
};

// Mel-grid layout: 1.92 s at 16 kHz, 2 halves x 96 frames x 64 bands.
inline constexpr std::size_t kGridSamples = 30720;
inline constexpr std::size_t kGridFrames = 192;
inline constexpr std::size_t kGridBands = 64;
inline constexpr std::size_t kGridWindow = 400;
inline constexpr std::size_t kGridHop = 160;
inline constexpr std::size_t kGridFft = 512;
inline constexpr double kGridFmin = 125.0;
inline constexpr double kGridFmax = 7500.0;
inline constexpr double kLogFloor = 1e-10;

/// Pads symmetrically with zeros, or trims trailing silence and then the
/// tail, to exactly kGridSamples.
std::vector<double> fit_to_grid_length(std::span<const double> samples);

/// Log-mel grid features. Clips not at 16 kHz are resampled first.
std::vector<double> mel_grid_features(const AudioClip& clip);

inline constexpr std::size_t kShortWindow = 800;  // 50 ms
inline constexpr std::size_t kShortHop = 400;     // 25 ms
inline constexpr std::size_t kShortFft = 1024;
inline constexpr std::size_t kFeaturesPerFrame = 34;

/// 34 short-term features per 50 ms frame, in output order.
std::vector<std::vector<double>> short_term_features(const AudioClip& clip);

/// Means then standard deviations of the short-term features and their
/// deltas. Throws Error(ClipTooShort) below one frame.
std::vector<double> handcrafted_features(const AudioClip& clip);

Embedding mel_grid_embedding(const speech::SpokenNameKey& key, const AudioClip& clip);
Embedding handcrafted_embedding(const speech::SpokenNameKey& key, const AudioClip& clip);
Embedding embed(Backend backend, const speech::SpokenNameKey& key, const AudioClip& clip);

/// Contents of one embedding TSV file. All rows share backend, language
/// and accent.
struct EmbeddingSet {
  Backend backend = Backend::MelGrid12288;
  std::string language;
  std::string accent;
  std::vector<Embedding> embeddings;

  /// Binary search by normalized name; the set is kept sorted.
  const Embedding* find(std::string_view name) const;
};

/// Sorts by name. Throws Error(DimensionMismatch) on mixed backends or
/// voices and Error(DuplicateName) on repeated names.
EmbeddingSet make_embedding_set(std::vector<Embedding> embeddings);

void write_embeddings(std::ostream& out, const EmbeddingSet& set);
void write_embeddings(const std::filesystem::path& path, const EmbeddingSet& set);
/// Throws Error(MalformedRow) on bad rows, Error(DimensionMismatch) when a
/// row disagrees with the header dim.
EmbeddingSet read_embeddings(std::istream& in);
EmbeddingSet read_embeddings(const std::filesystem::path& path);

}  // namespace namesound::embed
