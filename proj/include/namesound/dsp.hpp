#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace namesound::dsp {

/// w[i] = 0.54 - 0.46 cos(2 pi i / (n - 1)). Requires n >= 2.
std::vector<double> hamming_window(std::size_t n);

bool is_power_of_two(std::size_t n);

/// In-place iterative radix-2 FFT. Size must be a power of two.
void fft_in_place(std::span<std::complex<double>> data);

/// Full complex spectrum of a real signal of power-of-two length.
std::vector<std::complex<double>> fft(std::span<const double> signal);

/// |X[k]|^2 for k = 0..n/2 of a real frame whose length is a power of two.
std::vector<double> power_spectrum(std::span<const double> frame);

/// Same as power_spectrum() after zero-padding `frame` to `n_fft`.
std::vector<double> power_spectrum(std::span<const double> frame, std::size_t n_fft);

/// HTK mel scale: 2595 log10(1 + f / 700).
double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// One windowed analysis frame. `samples` has the FFT length; slots past
/// the window are zero.
struct Frame {
  std::vector<double> samples;
  std::size_t index = 0;
  std::size_t hop = 0;
};

/// Slides a `window`-sample Hamming window by `hop` and zero-pads each frame
/// to `n_fft`. Exactly `n_frames` frames are produced; samples past the end
/// of the signal read as zero.
std::vector<Frame> frame_signal(std::span<const double> signal, std::size_t n_frames, std::size_t window,
                                std::size_t hop, std::size_t n_fft);

/// Triangular filters with centers equally spaced in mel between fmin and
/// fmax. Row-major weights of shape n_mels x (n_fft / 2 + 1).
class MelFilterBank {
 public:
  /// Throws Error(InvalidRange) unless 0 <= fmin < fmax <= sample_rate / 2,
  /// n_mels >= 1, n_fft is a power of two, and every filter covers at least
  /// one FFT bin.
  MelFilterBank(std::size_t n_fft, std::size_t n_mels, double fmin, double fmax, double sample_rate);

  std::size_t n_fft() const noexcept { return n_fft_; }
  std::size_t n_mels() const noexcept { return n_mels_; }
  std::size_t n_bins() const noexcept { return n_fft_ / 2 + 1; }
  double fmin() const noexcept { return fmin_; }
  double fmax() const noexcept { return fmax_; }

  double weight(std::size_t band, std::size_t bin) const { return weights_[band * n_bins() + bin]; }
  std::span<const double> row(std::size_t band) const {
    return std::span<const double>(weights_).subspan(band * n_bins(), n_bins());
  }
  /// Center frequencies in Hz, strictly increasing.
  const std::vector<double>& centers_hz() const noexcept { return centers_hz_; }

  /// Band energies: weights x spectrum.
  std::vector<double> apply(std::span<const double> spectrum) const;

 private:
  std::size_t n_fft_;
  std::size_t n_mels_;
  double fmin_;
  double fmax_;
  std::vector<double> weights_;
  std::vector<double> centers_hz_;
};

MelFilterBank mel_filterbank(std::size_t n_fft, std::size_t n_mels, double fmin, double fmax,
                             double sample_rate);

}  // namespace namesound::dsp
