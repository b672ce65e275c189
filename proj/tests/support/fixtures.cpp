#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace namesound::testing {

TempDir::TempDir() {
  std::string pattern = (std::filesystem::temp_directory_path() / "namesound-test-XXXXXX").string();
  if (::mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Voice make_voice(std::uint64_t seed) {
  Rng rng(seed * 7919 + 17);
  Voice v;
  v.seed = seed;
  v.f0 = rng.uniform(90.0, 260.0);
  v.glide = rng.uniform(-0.25, 0.25);
  v.vibrato_hz = rng.uniform(3.0, 7.0);
  v.formants = {rng.uniform(300.0, 900.0), rng.uniform(1000.0, 2300.0), rng.uniform(2400.0, 3600.0)};
  v.bandwidths = {rng.uniform(60.0, 120.0), rng.uniform(90.0, 160.0), rng.uniform(120.0, 220.0)};
  v.duration = rng.uniform(0.55, 1.4);
  v.noise = rng.uniform(0.01, 0.05);
  return v;
}

std::vector<double> render_voice(const Voice& voice, double gain) {
  constexpr double rate = kCanonicalSampleRate;
  const auto n = static_cast<std::size_t>(voice.duration * rate);
  Rng rng(voice.seed);
  const int harmonics = static_cast<int>(7800.0 / (voice.f0 * 1.3));
  std::vector<double> amp(static_cast<std::size_t>(harmonics) + 1, 0.0);
  std::vector<double> phase0(amp.size(), 0.0);
  for (int h = 1; h <= harmonics; ++h) {
    const double f = h * voice.f0;
    double a = 0.02;
    for (std::size_t k = 0; k < 3; ++k) {
      const double d = (f - voice.formants[k]) / voice.bandwidths[k];
      a += 1.0 / (1.0 + d * d) / static_cast<double>(k + 1);
    }
    amp[static_cast<std::size_t>(h)] = a / std::sqrt(static_cast<double>(h));
    phase0[static_cast<std::size_t>(h)] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }

  std::vector<double> out(n, 0.0);
  double phase = 0.0;
  const double attack = 0.04 * rate;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    const double progress = static_cast<double>(i) / static_cast<double>(n);
    const double f0 = voice.f0 * (1.0 + voice.glide * progress) * (1.0 + 0.02 * std::sin(2.0 * std::numbers::pi * voice.vibrato_hz * t));
    phase += 2.0 * std::numbers::pi * f0 / rate;
    double s = 0.0;
    for (int h = 1; h <= harmonics; ++h) {
      if (h * f0 >= 7900.0) break;
      s += amp[static_cast<std::size_t>(h)] * std::sin(h * phase + phase0[static_cast<std::size_t>(h)]);
    }
    s += voice.noise * (2.0 * rng.uniform() - 1.0);
    // Raised-cosine attack and release with a slow syllable swell.
    const double fi = static_cast<double>(i);
    const double edge = std::min({1.0, fi / attack, static_cast<double>(n - 1 - i) / attack});
    const double env = 0.5 - 0.5 * std::cos(std::numbers::pi * edge);
    const double swell = 0.75 + 0.25 * std::sin(std::numbers::pi * progress);
    out[i] = s * env * swell;
  }
  double peak = 0.0;
  for (double s : out) peak = std::max(peak, std::abs(s));
  const double scale = peak > 0.0 ? 0.6 * gain / peak : 0.0;
  for (double& s : out) s *= scale;
  return out;
}

AudioClip render_clip(const Voice& voice, double gain) {
  return AudioClip(render_voice(voice, gain), kCanonicalSampleRate);
}

std::vector<double> sine(double hz, double amplitude, std::size_t n, double rate) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = amplitude * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / rate);
  }
  return out;
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_bytes(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

FixtureCorpus write_fixture_corpus(const std::filesystem::path& root, double partner_gain) {
  static const std::vector<std::array<std::string, 2>> pairs = {
      {"beatrice", "beatrix"}, {"catherine", "katharine"}, {"stephen", "steven"}, {"philip", "phillip"},
      {"sara", "sarah"},       {"geoffrey", "jeffrey"},    {"isabel", "isobel"},  {"brian", "bryan"},
      {"caitlin", "katelyn"},  {"teresa", "theresa"},
  };
  static const std::vector<std::string> singles = {
      "alexander", "margaret", "william", "elizabeth", "thomas",   "robert",    "abraham", "charlotte",
      "edward",    "frederick", "george", "harold",    "ingrid",   "joseph",    "leonard", "matilda",
      "nathaniel", "oliver",   "patricia", "quentin",  "rosalind", "samuel",    "timothy", "ursula",
      "victor",    "winifred", "xavier",  "yolanda",   "zachary",  "dorothy",
  };

  FixtureCorpus fx;
  fx.pairs = pairs;
  fx.audio_dir = root / "audio";
  fx.corpus_file = root / "corpus.txt";
  fx.truth_file = root / "truth.csv";
  std::filesystem::create_directories(fx.audio_dir);

  std::uint64_t seed = 1;
  std::string truth = "name,synonym\n";
  for (const auto& [a, b] : pairs) {
    const Voice v = make_voice(seed++);
    write_bytes(fx.audio_dir / (a + ".en.wav"), encode_wav_pcm16(render_clip(v)));
    write_bytes(fx.audio_dir / (b + ".en.wav"), encode_wav_pcm16(render_clip(v, partner_gain)));
    fx.names.push_back(a);
    fx.names.push_back(b);
    truth += a + "," + b + "\n" + b + "," + a + "\n";
  }
  for (const auto& s : singles) {
    write_bytes(fx.audio_dir / (s + ".en.wav"), encode_wav_pcm16(render_clip(make_voice(seed++))));
    fx.names.push_back(s);
  }
  std::string corpus;
  for (const auto& n : fx.names) corpus += n + "\n";
  write_text(fx.corpus_file, corpus);
  write_text(fx.truth_file, truth);
  return fx;
}

}  // namespace namesound::testing
