#include "namesound/dsp.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "namesound/error.hpp"

namespace namesound::dsp {

std::vector<double> hamming_window(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "hamming window needs n >= 2");
  std::vector<double> w(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
  }
  return w;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_in_place(std::span<std::complex<double>> data) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw Error(ErrorKind::InvalidArgument, "FFT size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        // Twiddles from the angle directly, not a running product, so the
        // error does not grow with len.
        const std::complex<double> w = std::polar(1.0, angle * static_cast<double>(k));
        const std::complex<double> u = data[start + k];
        const std::complex<double> v = data[start + k + len / 2] * w;
        data[start + k] = u + v;
        data[start + k + len / 2] = u - v;
      }
    }
  }
}

std::vector<std::complex<double>> fft(std::span<const double> signal) {
  std::vector<std::complex<double>> data(signal.begin(), signal.end());
  fft_in_place(data);
  return data;
}

std::vector<double> power_spectrum(std::span<const double> frame) {
  return power_spectrum(frame, frame.size());
}

std::vector<double> power_spectrum(std::span<const double> frame, std::size_t n_fft) {
  if (frame.size() > n_fft) throw Error(ErrorKind::InvalidArgument, "frame longer than FFT size");
  std::vector<std::complex<double>> data(n_fft);
  std::copy(frame.begin(), frame.end(), data.begin());
  fft_in_place(data);
  std::vector<double> out(n_fft / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::norm(data[k]);
  return out;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<Frame> frame_signal(std::span<const double> signal, std::size_t n_frames, std::size_t window,
                                std::size_t hop, std::size_t n_fft) {
  if (window > n_fft) throw Error(ErrorKind::InvalidArgument, "window longer than FFT size");
  const std::vector<double> w = hamming_window(window);
  std::vector<Frame> frames(n_frames);
  for (std::size_t t = 0; t < n_frames; ++t) {
    Frame& f = frames[t];
    f.index = t;
    f.hop = hop;
    f.samples.assign(n_fft, 0.0);
    const std::size_t start = t * hop;
    for (std::size_t i = 0; i < window && start + i < signal.size(); ++i) {
      f.samples[i] = signal[start + i] * w[i];
    }
  }
  return frames;
}

MelFilterBank::MelFilterBank(std::size_t n_fft, std::size_t n_mels, double fmin, double fmax,
                             double sample_rate)
    : n_fft_(n_fft), n_mels_(n_mels), fmin_(fmin), fmax_(fmax) {
  if (!(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0) || n_mels == 0 || !is_power_of_two(n_fft)) {
    throw Error(ErrorKind::InvalidRange, "mel filter bank needs 0 <= fmin < fmax <= sr/2, n_mels >= 1, "
                                         "power-of-two n_fft");
  }
  const double mel_lo = hz_to_mel(fmin);
  const double mel_hi = hz_to_mel(fmax);
  const double step = (mel_hi - mel_lo) / static_cast<double>(n_mels + 1);
  std::vector<double> edges_mel(n_mels + 2);
  for (std::size_t i = 0; i < edges_mel.size(); ++i) edges_mel[i] = mel_lo + step * static_cast<double>(i);

  const std::size_t bins = n_bins();
  weights_.assign(n_mels * bins, 0.0);
  centers_hz_.resize(n_mels);
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lo = edges_mel[m], center = edges_mel[m + 1], hi = edges_mel[m + 2];
    centers_hz_[m] = mel_to_hz(center);
    bool covered = false;
    for (std::size_t k = 0; k < bins; ++k) {
      const double mel = hz_to_mel(static_cast<double>(k) * sample_rate / static_cast<double>(n_fft));
      const double rising = (mel - lo) / (center - lo);
      const double falling = (hi - mel) / (hi - center);
      const double w = std::max(0.0, std::min(rising, falling));
      weights_[m * bins + k] = w;
      covered = covered || w > 0.0;
    }
    if (!covered) {
      throw Error(ErrorKind::InvalidRange,
                  "mel band " + std::to_string(m) + " covers no FFT bin; use fewer bands or a larger n_fft");
    }
  }
}

std::vector<double> MelFilterBank::apply(std::span<const double> spectrum) const {
  if (spectrum.size() != n_bins()) throw Error(ErrorKind::DimensionMismatch, "spectrum length != n_fft/2+1");
  std::vector<double> out(n_mels_, 0.0);
  for (std::size_t m = 0; m < n_mels_; ++m) {
    double acc = 0.0;
    const auto r = row(m);
    for (std::size_t k = 0; k < r.size(); ++k) acc += r[k] * spectrum[k];
    out[m] = acc;
  }
  return out;
}

MelFilterBank mel_filterbank(std::size_t n_fft, std::size_t n_mels, double fmin, double fmax,
                             double sample_rate) {
  return MelFilterBank(n_fft, n_mels, fmin, fmax, sample_rate);
}

}  // namespace namesound::dsp
