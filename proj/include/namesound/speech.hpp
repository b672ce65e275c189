#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "namesound/audio.hpp"
#include "namesound/corpus.hpp"

namespace namesound::speech {

/// Identifies one spoken rendition. An empty accent means the backend's
/// default voice for the language.
class SpokenNameKey {
 public:
  /// Throws Error(InvalidArgument) for an empty language tag. Tags are
  /// lowercased.
  SpokenNameKey(Name name, std::string language, std::string accent = {});

  const Name& name() const noexcept { return name_; }
  const std::string& language() const noexcept { return language_; }
  const std::string& accent() const noexcept { return accent_; }
  /// Directory label for the accent: the tag itself or "default".
  std::string accent_label() const;

  friend bool operator==(const SpokenNameKey& a, const SpokenNameKey& b) {
    return a.name_.normalized() == b.name_.normalized() && a.language_ == b.language_ &&
           a.accent_ == b.accent_;
  }

 private:
  Name name_;
  std::string language_;
  std::string accent_;
};

struct RawAudio {
  std::vector<std::uint8_t> bytes;
  std::string container;  // "wav"
};

/// Text-to-speech source. Implementations must be callable from several
/// threads at once.
class TtsBackend {
 public:
  virtual ~TtsBackend() = default;
  virtual RawAudio synthesize_raw(const SpokenNameKey& key) const = 0;
  /// True when a fixed key always yields the same bytes.
  virtual bool deterministic() const = 0;
  virtual std::string label() const = 0;
};

/// Serves `<name>.<language>.<accent>.wav`, falling back to
/// `<name>.<language>.wav`, from a directory.
class FixtureBackend final : public TtsBackend {
 public:
  explicit FixtureBackend(std::filesystem::path directory);
  RawAudio synthesize_raw(const SpokenNameKey& key) const override;
  bool deterministic() const override { return true; }
  std::string label() const override { return "fixture:" + directory_.string(); }

 private:
  std::filesystem::path directory_;
};

/// Runs a shell command template and reads WAV bytes from its stdout.
/// `{name}`, `{lang}` and `{accent}` are substituted, single-quoted.
class CommandBackend final : public TtsBackend {
 public:
  explicit CommandBackend(std::string command_template);
  RawAudio synthesize_raw(const SpokenNameKey& key) const override;
  bool deterministic() const override { return false; }
  std::string label() const override { return "command"; }

  std::string render_command(const SpokenNameKey& key) const;

 private:
  std::string template_;
};

/// Builds a CommandBackend from NAMESOUND_TTS_CMD. Throws
/// Error(BackendUnavailable) when unset.
std::unique_ptr<TtsBackend> backend_from_environment();

/// Clips shorter than this are treated as failed synthesis.
inline constexpr double kMinClipSeconds = 0.1;

/// On-disk clip store laid out as
/// `<root>/<language>/<accent>/<sha256(name)>.wav` with a `manifest.tsv`
/// (hash, name) per leaf directory. Writes go through temp-file + rename.
class AudioCache {
 public:
  explicit AudioCache(std::filesystem::path root);

  /// Root from NAMESOUND_CACHE_DIR, else `./namesound-cache`.
  static AudioCache from_environment();

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path leaf_directory(const SpokenNameKey& key) const;
  std::filesystem::path path_for(const SpokenNameKey& key) const;

  std::optional<std::vector<std::uint8_t>> load(const SpokenNameKey& key) const;
  void store(const SpokenNameKey& key, const std::vector<std::uint8_t>& wav_bytes);

 private:
  std::filesystem::path root_;
  mutable std::mutex mutex_;
};

/// Reads a leaf directory manifest; hash -> normalized name.
std::vector<std::pair<std::string, std::string>> read_manifest(const std::filesystem::path& leaf);

std::string sha256_hex(std::string_view data);

/// Returns the 16 kHz mono clip for `key`, from cache when present;
/// otherwise synthesizes, resamples, stores 16-bit PCM, and returns the clip
/// decoded from exactly the stored bytes.
/// Throws Error(SynthesisFailed | DecodeError | BackendUnavailable).
AudioClip synthesize(const SpokenNameKey& key, const TtsBackend& backend, AudioCache& cache);

struct FetchFailure {
  std::string name;
  std::string message;
};

struct FetchReport {
  std::size_t cached = 0;
  std::size_t synthesized = 0;
  std::vector<FetchFailure> failures;
};

/// Synthesizes every key with at most `parallelism` calls in flight.
FetchReport fetch_all(const std::vector<SpokenNameKey>& keys, const TtsBackend& backend,
                      AudioCache& cache, std::size_t parallelism = 4);

}  // namespace namesound::speech
