#include <cmath>
#include <numeric>
#include <numbers>

#include "namesound/audio.hpp"
#include "namesound/error.hpp"

namespace namesound {

namespace {

constexpr int kTaps = 64;
constexpr int kHalfTaps = kTaps / 2;
constexpr double kKaiserBeta = 8.6;
// Above this many phases the coefficient table is computed per sample.
constexpr std::uint64_t kMaxTablePhases = 4096;

double kaiser(double tau) {
  const double r = tau / kHalfTaps;
  if (r <= -1.0 || r >= 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) /
         std::cyl_bessel_i(0.0, kKaiserBeta);
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Taps for output positions `frac` input samples past an integer index.
// Tap j weights input sample (index - kHalfTaps + 1 + j).
void phase_coefficients(double frac, double cutoff, double* out) {
  double sum = 0.0;
  for (int j = 0; j < kTaps; ++j) {
    const double tau = static_cast<double>(j - kHalfTaps + 1) - frac;
    out[j] = 2.0 * cutoff * sinc(2.0 * cutoff * tau) * kaiser(tau);
    sum += out[j];
  }
  // Unit DC gain per phase.
  if (sum != 0.0) {
    for (int j = 0; j < kTaps; ++j) out[j] /= sum;
  }
}

}  // namespace

AudioClip resample(const AudioClip& clip, std::uint32_t target_rate) {
  if (target_rate == 0) throw Error(ErrorKind::InvalidArgument, "target rate must be positive");
  if (target_rate == clip.sample_rate()) return clip;

  const std::uint64_t g = std::gcd<std::uint64_t>(clip.sample_rate(), target_rate);
  const std::uint64_t up = target_rate / g;           // L
  const std::uint64_t down = clip.sample_rate() / g;  // M
  const double cutoff = 0.5 * std::min(1.0, static_cast<double>(up) / static_cast<double>(down));

  const auto in = clip.samples();
  const std::uint64_t n_in = in.size();
  const std::uint64_t n_out = (n_in * up + down - 1) / down;

  const bool tabulate = up <= kMaxTablePhases;
  std::vector<double> table;
  if (tabulate) {
    table.resize(static_cast<std::size_t>(up) * kTaps);
    for (std::uint64_t p = 0; p < up; ++p) {
      phase_coefficients(static_cast<double>(p) / static_cast<double>(up), cutoff, &table[p * kTaps]);
    }
  }

  std::vector<double> out(static_cast<std::size_t>(n_out));
  double scratch[kTaps];
  for (std::uint64_t n = 0; n < n_out; ++n) {
    const std::uint64_t pos = n * down;
    const std::int64_t index = static_cast<std::int64_t>(pos / up);
    const std::uint64_t phase = pos % up;
    const double* h = scratch;
    if (tabulate) {
      h = &table[phase * kTaps];
    } else {
      phase_coefficients(static_cast<double>(phase) / static_cast<double>(up), cutoff, scratch);
    }
    double acc = 0.0;
    for (int j = 0; j < kTaps; ++j) {
      const std::int64_t k = index - kHalfTaps + 1 + j;
      if (k >= 0 && k < static_cast<std::int64_t>(n_in)) acc += h[j] * in[static_cast<std::size_t>(k)];
    }
    out[n] = acc;
  }
  return AudioClip(std::move(out), target_rate);
}

}  // namespace namesound
