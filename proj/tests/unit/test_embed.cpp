#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "fixtures.hpp"
#include "namesound/dsp.hpp"
#include "namesound/embed.hpp"
#include "namesound/error.hpp"

using namespace namesound;
using namespace namesound::embed;
using namespace namesound::testing;

namespace {

speech::SpokenNameKey key(const char* name) { return speech::SpokenNameKey(normalize_name(name), "en"); }

double l2(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

// O(n^2) DFT used as the spectrum oracle.
std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      out[k] += x[i] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * i % n) / static_cast<double>(n));
    }
  }
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_SUITE("embed") {
  TEST_CASE("hamming window") {
    const auto w2 = dsp::hamming_window(2);
    CHECK(w2[0] == doctest::Approx(0.08));
    CHECK(w2[1] == doctest::Approx(0.08));
    const auto w3 = dsp::hamming_window(3);
    CHECK(w3[1] == doctest::Approx(1.0));
    const auto w = dsp::hamming_window(400);
    for (std::size_t i = 0; i < 400; ++i) CHECK(w[i] == doctest::Approx(w[399 - i]).epsilon(1e-12));
    CHECK(*std::max_element(w.begin(), w.end()) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::max_element(w.begin(), w.end()) - w.begin() == 199);
    CHECK_THROWS_AS(dsp::hamming_window(1), Error);
  }

  TEST_CASE("fft matches a naive dft") {
    Rng rng(4);
    for (std::size_t n : {1u, 2u, 8u, 64u, 512u}) {
      std::vector<double> x(n);
      for (double& v : x) v = rng.uniform(-1.0, 1.0);
      const auto fast = dsp::fft(x);
      const auto slow = naive_dft(x);
      for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(fast[k] - slow[k]) <= 1e-9 * static_cast<double>(n));
    }
    CHECK_THROWS_AS(dsp::fft(std::vector<double>(12, 0.0)), Error);
  }

  TEST_CASE("power spectrum examples") {
    std::vector<double> impulse(8, 0.0);
    impulse[0] = 1.0;
    const auto p = dsp::power_spectrum(impulse);
    REQUIRE(p.size() == 5);
    for (double v : p) CHECK(v == doctest::Approx(1.0));

    for (std::size_t k : {3u, 17u, 100u}) {
      const auto s = sine(static_cast<double>(k) * 16000.0 / 512.0, 0.7, 512);
      const auto ps = dsp::power_spectrum(s);
      double total = 0.0;
      for (double v : ps) total += v;
      CHECK(ps[k] / total > 0.99);
    }
    for (double v : dsp::power_spectrum(std::vector<double>(256, 0.0))) CHECK(v == 0.0);
  }

  TEST_CASE("windowed parseval") {
    Rng rng(21);
    const auto w = dsp::hamming_window(400);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> frame(512, 0.0);
      double time_energy = 0.0;
      for (std::size_t i = 0; i < 400; ++i) {
        frame[i] = rng.uniform(-1.0, 1.0) * w[i];
        time_energy += frame[i] * frame[i];
      }
      double freq_energy = 0.0;
      for (const auto& c : dsp::fft(frame)) freq_energy += std::norm(c);
      CHECK(std::abs(time_energy - freq_energy / 512.0) / time_energy <= 1e-6);
    }
  }

  TEST_CASE("mel scale") {
    CHECK(dsp::hz_to_mel(700.0) == doctest::Approx(781.17).epsilon(1e-5));
    CHECK(dsp::hz_to_mel(0.0) == 0.0);
    CHECK(dsp::mel_to_hz(dsp::hz_to_mel(1234.5)) == doctest::Approx(1234.5).epsilon(1e-12));
  }

  TEST_CASE("mel filter bank invariants") {
    const auto bank = dsp::mel_filterbank(512, 64, 125.0, 7500.0, 16000.0);
    CHECK(bank.n_mels() == 64);
    CHECK(bank.n_bins() == 257);
    const double lo = 2595.0 * std::log10(1.0 + 125.0 / 700.0);
    const double hi = 2595.0 * std::log10(1.0 + 7500.0 / 700.0);
    for (std::size_t m = 0; m < 64; ++m) {
      const double mel = lo + (hi - lo) * static_cast<double>(m + 1) / 65.0;
      CHECK(bank.centers_hz()[m] == doctest::Approx(700.0 * (std::pow(10.0, mel / 2595.0) - 1.0)).epsilon(1e-12));
      if (m > 0) CHECK(bank.centers_hz()[m] > bank.centers_hz()[m - 1]);
      const auto row = bank.row(m);
      CHECK(std::all_of(row.begin(), row.end(), [](double v) { return v >= 0.0 && v <= 1.0; }));
      CHECK(std::any_of(row.begin(), row.end(), [](double v) { return v > 0.0; }));
    }
  }

  TEST_CASE("mel filter bank range errors") {
    CHECK(kind_of([] { dsp::mel_filterbank(512, 64, 125.0, 9000.0, 16000.0); }) == ErrorKind::InvalidRange);
    CHECK(kind_of([] { dsp::mel_filterbank(512, 64, 500.0, 500.0, 16000.0); }) == ErrorKind::InvalidRange);
    CHECK(kind_of([] { dsp::mel_filterbank(512, 0, 0.0, 8000.0, 16000.0); }) == ErrorKind::InvalidRange);
    CHECK(kind_of([] { dsp::mel_filterbank(64, 128, 0.0, 8000.0, 16000.0); }) == ErrorKind::InvalidRange);
    CHECK(kind_of([] { dsp::mel_filterbank(500, 10, 0.0, 8000.0, 16000.0); }) == ErrorKind::InvalidRange);
  }

  TEST_CASE("frames") {
    const std::vector<double> x(1000, 1.0);
    const auto frames = dsp::frame_signal(x, 8, 400, 160, 512);
    REQUIRE(frames.size() == 8);
    for (const auto& f : frames) CHECK(f.samples.size() == 512);
    CHECK(frames[6].samples[0] == doctest::Approx(0.08));
    CHECK(frames[6].samples[39] > 0.08);
    CHECK(frames[6].samples[40] == 0.0);  // 6 * 160 + 40 is past the end
    CHECK(frames[7].samples[0] == 0.0);
    CHECK(frames[3].hop == 160);
  }

  TEST_CASE("grid length fitting") {
    const auto pad = fit_to_grid_length(std::vector<double>(100, 0.5));
    REQUIRE(pad.size() == kGridSamples);
    CHECK(pad[(kGridSamples - 100) / 2] == 0.5);
    CHECK(pad[(kGridSamples - 100) / 2 - 1] == 0.0);
    CHECK(pad[(kGridSamples - 100) / 2 + 100] == 0.0);

    std::vector<double> speech_then_silence(20000, 0.5);
    speech_then_silence.resize(40000, 0.0);
    const auto trimmed = fit_to_grid_length(speech_then_silence);
    CHECK(trimmed[(kGridSamples - 20000) / 2] == 0.5);

    std::vector<double> long_speech(40000, 0.25);
    const auto cut = fit_to_grid_length(long_speech);
    CHECK(cut.front() == 0.25);
    CHECK(cut.back() == 0.25);
  }

  TEST_CASE("mel grid dimension is duration-invariant") {
    for (std::size_t n : {1600u, 16000u, 30720u, 48000u}) {
      const auto v = mel_grid_features(AudioClip(sine(300.0, 0.3, n), 16000));
      CHECK(v.size() == kMelGridDim);
      CHECK(std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); }));
    }
    CHECK(mel_grid_features(AudioClip(sine(300.0, 0.3, 22050, 44100.0), 44100)).size() == kMelGridDim);
  }

  TEST_CASE("mel grid of silence is the log floor") {
    const auto v = mel_grid_features(AudioClip(std::vector<double>(16000, 0.0), 16000));
    for (double x : v) CHECK(x == std::log(1e-10));
    CHECK(std::log(1e-10) == doctest::Approx(-23.0259).epsilon(1e-5));
  }

  TEST_CASE("440 Hz sine peaks in the nearest-center band") {
    const auto bank = dsp::mel_filterbank(kGridFft, kGridBands, kGridFmin, kGridFmax, 16000.0);
    std::size_t nearest = 0;
    for (std::size_t m = 0; m < kGridBands; ++m) {
      if (std::abs(bank.centers_hz()[m] - 440.0) < std::abs(bank.centers_hz()[nearest] - 440.0)) nearest = m;
    }
    const auto v = mel_grid_features(AudioClip(sine(440.0, 0.5, 32000), 16000));
    for (std::size_t t = 0; t < kGridFrames; ++t) {
      const auto begin = v.begin() + static_cast<std::ptrdiff_t>(t * kGridBands);
      INFO("frame " << t);
      CHECK(static_cast<std::size_t>(std::max_element(begin, begin + kGridBands) - begin) == nearest);
    }
  }

  TEST_CASE("mel grid is deterministic and shift-tolerant") {
    const AudioClip clip = render_clip(make_voice(3));
    const auto a = mel_grid_features(clip);
    CHECK(a == mel_grid_features(clip));

    auto shifted = [&](std::size_t by) {
      std::vector<double> s(by, 0.0);
      s.insert(s.end(), clip.samples().begin(), clip.samples().end());
      return mel_grid_features(AudioClip(s, 16000));
    };
    // Padding is symmetric, so an n-sample lead moves the content n/2.
    const double small = l2(a, shifted(100));
    const double large = l2(a, shifted(8000));
    CHECK(small < large);
  }

  TEST_CASE("handcrafted dimension and basic values") {
    const auto v = handcrafted_features(render_clip(make_voice(5)));
    CHECK(v.size() == kHandcraftedDim);
    CHECK(std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); }));
    for (std::size_t j = 68; j < 136; ++j) CHECK(v[j] >= 0.0);

    const auto silence = handcrafted_features(AudioClip(std::vector<double>(8000, 0.0), 16000));
    CHECK(silence[0] == 0.0);
    CHECK(silence[1] == 0.0);
    CHECK(std::all_of(silence.begin(), silence.end(), [](double x) { return std::isfinite(x); }));

    const auto dc = handcrafted_features(AudioClip(std::vector<double>(8000, 0.3), 16000));
    CHECK(dc[0] == 0.0);
    CHECK(dc[1] == doctest::Approx(0.09).epsilon(1e-12));
  }

  TEST_CASE("handcrafted frame features on a tone") {
    const auto frames = short_term_features(AudioClip(sine(1000.0, 0.5, 8000), 16000));
    REQUIRE(frames.size() == 1 + (8000 - kShortWindow) / kShortHop);
    for (const auto& f : frames) {
      REQUIRE(f.size() == kFeaturesPerFrame);
      CHECK(f[0] == doctest::Approx(2.0 * 1000.0 / 16000.0).epsilon(0.02));  // zcr
      CHECK(f[1] == doctest::Approx(0.125).epsilon(0.01));                   // energy of a 0.5 sine
      CHECK(f[3] == doctest::Approx(1000.0 / 8000.0).epsilon(0.1));          // centroid
      CHECK(f[7] == doctest::Approx(1000.0 / 8000.0).epsilon(0.05));         // rolloff
    }
    const auto a440 = short_term_features(AudioClip(sine(440.0, 0.5, 4000), 16000));
    const auto& chroma = a440[1];
    CHECK(std::max_element(chroma.begin() + 21, chroma.begin() + 33) - (chroma.begin() + 21) == 0);
  }

  TEST_CASE("handcrafted needs one full frame") {
    CHECK(kind_of([] { handcrafted_features(AudioClip(std::vector<double>(799, 0.1), 16000)); }) ==
          ErrorKind::ClipTooShort);
    const auto one = handcrafted_features(AudioClip(std::vector<double>(800, 0.1), 16000));
    CHECK(one.size() == 136);
    for (std::size_t j = 34; j < 68; ++j) CHECK(one[j] == 0.0);  // deltas
    for (std::size_t j = 68; j < 136; ++j) CHECK(one[j] == 0.0);  // stds
  }

  TEST_CASE("embedding invariants") {
    CHECK(kind_of([] { Embedding(key("anna"), Backend::Handcrafted136, std::vector<double>(10)); }) ==
          ErrorKind::DimensionMismatch);
    std::vector<double> bad(136, 0.0);
    bad[5] = std::nan("");
    CHECK(kind_of([&] { Embedding(key("anna"), Backend::Handcrafted136, bad); }) == ErrorKind::InvalidArgument);
    const Embedding e = embed::embed(Backend::MelGrid12288, key("anna"), AudioClip(sine(200, 0.2, 4000), 16000));
    CHECK(e.dim() == 12288);
    CHECK(parse_backend("hand") == Backend::Handcrafted136);
    CHECK_THROWS_AS(parse_backend("vggish"), Error);
  }

  TEST_CASE("embedding store round trip is exact") {
    Rng rng(8);
    std::vector<Embedding> rows;
    for (const char* n : {"zoë", "anna", "robert"}) {
      std::vector<double> v(136);
      for (double& x : v) x = rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.uniform(-20.0, 5.0));
      v[0] = -23.025850929940457;
      rows.emplace_back(speech::SpokenNameKey(normalize_name(n), "en", "us"), Backend::Handcrafted136, v);
    }
    const EmbeddingSet set = make_embedding_set(rows);
    std::stringstream io;
    write_embeddings(io, set);
    const std::string text = io.str();
    CHECK(text.rfind("#namesound-embeddings v1 backend=hand dim=136 lang=en accent=us\n", 0) == 0);
    const EmbeddingSet back = read_embeddings(io);
    REQUIRE(back.embeddings.size() == 3);
    CHECK(back.embeddings[0].name().normalized() == "anna");
    for (std::size_t i = 0; i < 3; ++i) CHECK(back.embeddings[i].vector() == set.embeddings[i].vector());
    CHECK(back.accent == "us");
    CHECK(back.find("ZOË") != nullptr);
    CHECK(back.find("nobody") == nullptr);
  }

  TEST_CASE("embedding store errors") {
    auto read = [](const std::string& s) {
      std::istringstream in(s);
      return read_embeddings(in);
    };
    CHECK(kind_of([&] { read("hello\n"); }) == ErrorKind::MalformedRow);
    CHECK(kind_of([&] { read("#namesound-embeddings v1 backend=hand dim=12 lang=en accent=default\n"); }) ==
          ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { read("#namesound-embeddings v1 backend=hand dim=136 lang=en accent=default\nanna\t1 2\n"); }) ==
          ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { read("#namesound-embeddings v1 backend=hand dim=136 lang=en accent=default\nanna 1 2\n"); }) ==
          ErrorKind::MalformedRow);
    CHECK(kind_of([&] { read("#namesound-embeddings v1 backend=hand dim=136 lang=en accent=default\nanna\t1 x\n"); }) ==
          ErrorKind::MalformedRow);
    const std::vector<double> v(136, 0.5);
    std::vector<Embedding> dup{Embedding(key("anna"), Backend::Handcrafted136, v),
                               Embedding(key("Anna"), Backend::Handcrafted136, v)};
    CHECK(kind_of([&] { make_embedding_set(dup); }) == ErrorKind::DuplicateName);
  }
}
