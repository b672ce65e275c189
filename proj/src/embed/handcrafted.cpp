#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "namesound/dsp.hpp"
#include "namesound/embed.hpp"
#include "namesound/error.hpp"

namespace namesound::embed {
namespace {

constexpr double kEps = 1e-8;
constexpr std::size_t kEntropyBlocks = 10;
constexpr std::size_t kMfccBands = 40;
constexpr std::size_t kMfccCoefficients = 13;
constexpr double kRolloff = 0.90;
// Magnitude bins kept per frame: 0 up to, not including, Nyquist.
constexpr std::size_t kBins = kShortFft / 2;

const dsp::MelFilterBank& mfcc_filterbank() {
  static const dsp::MelFilterBank bank(kShortFft, kMfccBands, 133.33, 6855.4976, kCanonicalSampleRate);
  return bank;
}

const std::vector<double>& short_window() {
  static const std::vector<double> w = dsp::hamming_window(kShortWindow);
  return w;
}

// Pitch class (0 = A) of each magnitude bin by nearest semitone from A4;
// -1 for DC.
const std::vector<int>& chroma_map() {
  static const std::vector<int> map = [] {
    std::vector<int> m(kBins, -1);
    for (std::size_t k = 1; k < kBins; ++k) {
      const double f = static_cast<double>(k) * kCanonicalSampleRate / static_cast<double>(kShortFft);
      const long semis = std::lround(12.0 * std::log2(f / 440.0));
      m[k] = static_cast<int>(((semis % 12) + 12) % 12);
    }
    return m;
  }();
  return map;
}

double block_entropy(std::span<const double> squares, double total) {
  const std::size_t block = squares.size() / kEntropyBlocks;
  double h = 0.0;
  for (std::size_t b = 0; b < kEntropyBlocks; ++b) {
    double e = 0.0;
    for (std::size_t i = b * block; i < (b + 1) * block; ++i) e += squares[i];
    const double p = e / (total + kEps);
    h -= p * std::log2(p + kEps);
  }
  return h;
}

std::vector<double> dct2_ortho(std::span<const double> x, std::size_t n_out) {
  const std::size_t n = x.size();
  std::vector<double> out(n_out);
  for (std::size_t k = 0; k < n_out; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * std::cos(std::numbers::pi * static_cast<double>(k) * (2.0 * static_cast<double>(i) + 1.0) /
                             (2.0 * static_cast<double>(n)));
    }
    out[k] = acc * std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
  }
  return out;
}

std::vector<double> frame_features(std::span<const double> x, std::span<const double> magnitude,
                                   std::span<const double> previous) {
  std::vector<double> f;
  f.reserve(kFeaturesPerFrame);
  const double n = static_cast<double>(x.size());

  double crossings = 0.0;
  auto sign = [](double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); };
  for (std::size_t i = 1; i < x.size(); ++i) crossings += std::abs(sign(x[i]) - sign(x[i - 1]));
  f.push_back(crossings / 2.0 / (n - 1.0));

  std::vector<double> squares(x.size());
  double frame_energy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    squares[i] = x[i] * x[i];
    frame_energy += squares[i];
  }
  f.push_back(frame_energy / n);
  f.push_back(block_entropy(squares, frame_energy));

  const double nyquist = kCanonicalSampleRate / 2.0;
  const double mag_max = *std::max_element(magnitude.begin(), magnitude.end());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < kBins; ++k) {
    const double w = mag_max > 0.0 ? magnitude[k] / mag_max : 0.0;
    num += static_cast<double>(k) * kCanonicalSampleRate / kShortFft * w;
    den += w;
  }
  den += kEps;
  const double centroid = num / den;
  double spread_acc = 0.0;
  for (std::size_t k = 0; k < kBins; ++k) {
    const double w = mag_max > 0.0 ? magnitude[k] / mag_max : 0.0;
    const double d = static_cast<double>(k) * kCanonicalSampleRate / kShortFft - centroid;
    spread_acc += d * d * w;
  }
  f.push_back(centroid / nyquist);
  f.push_back(std::sqrt(spread_acc / den) / nyquist);

  std::vector<double> power(kBins);
  double total_power = 0.0;
  for (std::size_t k = 0; k < kBins; ++k) {
    power[k] = magnitude[k] * magnitude[k];
    total_power += power[k];
  }
  f.push_back(block_entropy(power, total_power));

  double sum = 0.0, prev_sum = 0.0;
  for (std::size_t k = 0; k < kBins; ++k) {
    sum += magnitude[k] + kEps;
    prev_sum += previous[k] + kEps;
  }
  double flux = 0.0;
  for (std::size_t k = 0; k < kBins; ++k) {
    const double d = magnitude[k] / sum - previous[k] / prev_sum;
    flux += d * d;
  }
  f.push_back(flux);

  double rolloff = 0.0;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < kBins; ++k) {
    cumulative += power[k];
    if (cumulative + kEps > kRolloff * total_power) {
      rolloff = static_cast<double>(k) / static_cast<double>(kBins);
      break;
    }
  }
  f.push_back(rolloff);

  // The filter bank spans the full half spectrum including Nyquist.
  std::vector<double> padded(magnitude.begin(), magnitude.end());
  padded.push_back(0.0);
  std::vector<double> bands = mfcc_filterbank().apply(padded);
  for (double& b : bands) b = std::log10(b + kEps);
  for (double c : dct2_ortho(bands, kMfccCoefficients)) f.push_back(c);

  std::vector<double> chroma(12, 0.0);
  const auto& map = chroma_map();
  for (std::size_t k = 1; k < kBins; ++k) chroma[static_cast<std::size_t>(map[k])] += power[k];
  for (double& c : chroma) c = total_power > 0.0 ? c / total_power : 0.0;
  double chroma_mean = 0.0;
  for (double c : chroma) chroma_mean += c / 12.0;
  double chroma_var = 0.0;
  for (double c : chroma) {
    f.push_back(c);
    chroma_var += (c - chroma_mean) * (c - chroma_mean) / 12.0;
  }
  f.push_back(std::sqrt(chroma_var));
  return f;
}

}  // namespace

std::vector<std::vector<double>> short_term_features(const AudioClip& clip) {
  const AudioClip canonical =
      clip.sample_rate() == kCanonicalSampleRate ? clip : resample(clip, kCanonicalSampleRate);
  const auto signal = canonical.samples();
  if (signal.size() < kShortWindow) {
    throw Error(ErrorKind::ClipTooShort, "clip shorter than one 50 ms analysis frame");
  }
  const std::size_t n_frames = 1 + (signal.size() - kShortWindow) / kShortHop;
  const auto& window = short_window();

  std::vector<std::vector<double>> out;
  out.reserve(n_frames);
  std::vector<double> previous;
  std::vector<std::complex<double>> buffer(kShortFft);
  std::vector<double> magnitude(kBins);
  for (std::size_t t = 0; t < n_frames; ++t) {
    const auto x = signal.subspan(t * kShortHop, kShortWindow);
    std::fill(buffer.begin(), buffer.end(), std::complex<double>{});
    for (std::size_t i = 0; i < kShortWindow; ++i) buffer[i] = x[i] * window[i];
    dsp::fft_in_place(buffer);
    for (std::size_t k = 0; k < kBins; ++k) magnitude[k] = std::abs(buffer[k]) / static_cast<double>(kBins);
    if (previous.empty()) previous = magnitude;
    out.push_back(frame_features(x, magnitude, previous));
    previous = magnitude;
  }
  return out;
}

std::vector<double> handcrafted_features(const AudioClip& clip) {
  const auto frames = short_term_features(clip);
  constexpr std::size_t width = 2 * kFeaturesPerFrame;
  std::vector<double> mean(width, 0.0), m2(width, 0.0);
  std::vector<double> row(width);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    for (std::size_t j = 0; j < kFeaturesPerFrame; ++j) {
      row[j] = frames[t][j];
      row[kFeaturesPerFrame + j] = t == 0 ? 0.0 : frames[t][j] - frames[t - 1][j];
    }
    const double count = static_cast<double>(t + 1);
    for (std::size_t j = 0; j < width; ++j) {
      const double delta = row[j] - mean[j];
      mean[j] += delta / count;
      m2[j] += delta * (row[j] - mean[j]);
    }
  }
  std::vector<double> out(mean);
  out.reserve(kHandcraftedDim);
  for (std::size_t j = 0; j < width; ++j) {
    out.push_back(std::sqrt(std::max(0.0, m2[j] / static_cast<double>(frames.size()))));
  }
  return out;
}

Embedding handcrafted_embedding(const speech::SpokenNameKey& key, const AudioClip& clip) {
  return Embedding(key, Backend::Handcrafted136, handcrafted_features(clip));
}

}  // namespace namesound::embed
