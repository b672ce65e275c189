#include <cmath>

#include "namesound/dsp.hpp"
#include "namesound/embed.hpp"
#include "namesound/error.hpp"

namespace namesound::embed {
namespace {

// One 16-bit quantization step; anything quieter is treated as silence.
constexpr double kSilence = 1.0 / 32768.0;

const dsp::MelFilterBank& grid_filterbank() {
  static const dsp::MelFilterBank bank(kGridFft, kGridBands, kGridFmin, kGridFmax, kCanonicalSampleRate);
  return bank;
}

const std::vector<double>& grid_window() {
  static const std::vector<double> w = dsp::hamming_window(kGridWindow);
  return w;
}

}  // namespace

std::vector<double> fit_to_grid_length(std::span<const double> samples) {
  std::size_t n = samples.size();
  if (n > kGridSamples) {
    while (n > 0 && std::abs(samples[n - 1]) < kSilence) --n;
  }
  if (n >= kGridSamples) return {samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(kGridSamples)};
  std::vector<double> out(kGridSamples, 0.0);
  const std::size_t lead = (kGridSamples - n) / 2;
  std::copy(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(n),
            out.begin() + static_cast<std::ptrdiff_t>(lead));
  return out;
}

std::vector<double> mel_grid_features(const AudioClip& clip) {
  const AudioClip canonical =
      clip.sample_rate() == kCanonicalSampleRate ? clip : resample(clip, kCanonicalSampleRate);
  const std::vector<double> signal = fit_to_grid_length(canonical.samples());
  const auto& bank = grid_filterbank();
  const auto& window = grid_window();

  std::vector<double> out;
  out.reserve(kMelGridDim);
  std::vector<double> frame(kGridFft);
  for (std::size_t t = 0; t < kGridFrames; ++t) {
    std::fill(frame.begin(), frame.end(), 0.0);
    const std::size_t start = t * kGridHop;
    for (std::size_t i = 0; i < kGridWindow && start + i < signal.size(); ++i) {
      frame[i] = signal[start + i] * window[i];
    }
    const std::vector<double> energies = bank.apply(dsp::power_spectrum(frame));
    for (double e : energies) out.push_back(std::log(e + kLogFloor));
  }
  return out;
}

Embedding mel_grid_embedding(const speech::SpokenNameKey& key, const AudioClip& clip) {
  return Embedding(key, Backend::MelGrid12288, mel_grid_features(clip));
}

}  // namespace namesound::embed
