#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace namesound {

inline constexpr std::uint32_t kCanonicalSampleRate = 16000;

/// Mono PCM audio with samples in [-1, 1]. Immutable once built.
class AudioClip {
 public:
  /// Clamps samples into [-1, 1]. Throws Error(EmptyClip) for an empty
  /// buffer and Error(InvalidArgument) for a zero sample rate.
  AudioClip(std::vector<double> samples, std::uint32_t sample_rate);

  std::span<const double> samples() const noexcept { return samples_; }
  std::uint32_t sample_rate() const noexcept { return sample_rate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration_seconds() const noexcept {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }

  friend bool operator==(const AudioClip&, const AudioClip&) = default;

 private:
  std::vector<double> samples_;
  std::uint32_t sample_rate_;
};

/// Parses RIFF/WAVE with PCM 8/16/24/32-bit integer or 32/64-bit float
/// samples (WAVE_FORMAT_EXTENSIBLE included). Channels are averaged per
/// frame. Throws Error(DecodeError).
AudioClip decode_wav(std::span<const std::uint8_t> bytes);

/// 16-bit PCM little-endian mono, the cache format.
std::vector<std::uint8_t> encode_wav_pcm16(const AudioClip& clip);

/// 32-bit float mono; lossless for test fixtures.
std::vector<std::uint8_t> encode_wav_float32(const AudioClip& clip);

/// Band-limited resampling with a 64-tap Kaiser-windowed sinc (beta 8.6),
/// evaluated as a polyphase filter over the reduced rate ratio.
AudioClip resample(const AudioClip& clip, std::uint32_t target_rate);

}  // namespace namesound
