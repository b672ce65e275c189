#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "namesound/audio.hpp"

namespace namesound::testing {

/// Creates a fresh directory under the system temp dir and removes it on
/// destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// Deterministic uniform doubles in [0, 1) independent of the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Parameters of a synthetic vowel-like utterance: a gliding harmonic
/// source shaped by three formants plus breath noise.
struct Voice {
  double f0 = 120.0;
  double glide = 0.0;
  double vibrato_hz = 5.0;
  std::array<double, 3> formants{500.0, 1500.0, 2500.0};
  std::array<double, 3> bandwidths{80.0, 120.0, 160.0};
  double duration = 0.8;
  double noise = 0.02;
  std::uint64_t seed = 1;
};

Voice make_voice(std::uint64_t seed);

/// Peak-normalized to 0.6 * gain at 16 kHz.
std::vector<double> render_voice(const Voice& voice, double gain = 1.0);
AudioClip render_clip(const Voice& voice, double gain = 1.0);

std::vector<double> sine(double hz, double amplitude, std::size_t n, double rate = kCanonicalSampleRate);

/// The 50-name fixture corpus: ten sound-alike pairs whose second member
/// replays the first member's audio with a small gain change, and thirty
/// names with their own voices.
struct FixtureCorpus {
  std::vector<std::string> names;
  std::vector<std::array<std::string, 2>> pairs;
  std::filesystem::path audio_dir;
  std::filesystem::path corpus_file;
  std::filesystem::path truth_file;
};

inline constexpr double kPartnerGain = 1.001;

/// Writes `<root>/audio/<name>.en.wav` (16-bit PCM), `corpus.txt` and
/// `truth.csv` (both directions of each pair).
FixtureCorpus write_fixture_corpus(const std::filesystem::path& root, double partner_gain = kPartnerGain);

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace namesound::testing
