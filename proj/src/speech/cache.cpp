#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "namesound/error.hpp"
#include "namesound/speech.hpp"

namespace namesound::speech {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::IoError, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0x0F]);
  }
  return out;
}

namespace {

constexpr const char* kManifest = "manifest.tsv";

std::string temp_suffix() {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream s;
  s << ".tmp." << std::hex << rng();
  return s.str();
}

void write_atomically(const fs::path& target, std::string_view content) {
  const fs::path tmp = target.parent_path() / (target.filename().string() + temp_suffix());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::IoError, "cannot move into place: " + target.string());
  }
}

}  // namespace

AudioCache::AudioCache(fs::path root) : root_(std::move(root)) {}

AudioCache AudioCache::from_environment() {
  const char* dir = std::getenv("NAMESOUND_CACHE_DIR");
  return AudioCache(dir != nullptr && *dir != '\0' ? fs::path(dir) : fs::path("namesound-cache"));
}

fs::path AudioCache::leaf_directory(const SpokenNameKey& key) const {
  return root_ / key.language() / key.accent_label();
}

fs::path AudioCache::path_for(const SpokenNameKey& key) const {
  return leaf_directory(key) / (sha256_hex(key.name().normalized()) + ".wav");
}

std::optional<std::vector<std::uint8_t>> AudioCache::load(const SpokenNameKey& key) const {
  const fs::path path = path_for(key);
  if (!fs::is_regular_file(path)) return std::nullopt;
  const std::string text = read_text_file(path);
  return std::vector<std::uint8_t>(text.begin(), text.end());
}

std::vector<std::pair<std::string, std::string>> read_manifest(const fs::path& leaf) {
  std::vector<std::pair<std::string, std::string>> rows;
  const fs::path path = leaf / kManifest;
  if (!fs::is_regular_file(path)) return rows;
  std::istringstream in(read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

void AudioCache::store(const SpokenNameKey& key, const std::vector<std::uint8_t>& wav_bytes) {
  const fs::path leaf = leaf_directory(key);
  std::error_code ec;
  fs::create_directories(leaf, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + leaf.string());

  const std::string hash = sha256_hex(key.name().normalized());
  write_atomically(leaf / (hash + ".wav"),
                   std::string_view(reinterpret_cast<const char*>(wav_bytes.data()), wav_bytes.size()));

  std::lock_guard lock(mutex_);
  auto rows = read_manifest(leaf);
  if (std::any_of(rows.begin(), rows.end(), [&](const auto& r) { return r.first == hash; })) return;
  rows.emplace_back(hash, key.name().normalized());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  std::string content = "#namesound-manifest v1 lang=" + key.language() + " accent=" + key.accent_label() + "\n";
  for (const auto& [h, n] : rows) content += h + "\t" + n + "\n";
  write_atomically(leaf / kManifest, content);
}

AudioClip synthesize(const SpokenNameKey& key, const TtsBackend& backend, AudioCache& cache) {
  if (auto cached = cache.load(key)) return decode_wav(*cached);

  RawAudio raw = backend.synthesize_raw(key);
  if (raw.container != "wav") {
    throw Error(ErrorKind::DecodeError, "backend returned '" + raw.container + "', expected wav");
  }
  const AudioClip clip = resample(decode_wav(raw.bytes), kCanonicalSampleRate);
  if (clip.duration_seconds() < kMinClipSeconds) {
    throw Error(ErrorKind::SynthesisFailed,
                "clip for '" + key.name().normalized() + "' is shorter than 100 ms");
  }
  const std::vector<std::uint8_t> stored = encode_wav_pcm16(clip);
  cache.store(key, stored);
  return decode_wav(stored);
}

FetchReport fetch_all(const std::vector<SpokenNameKey>& keys, const TtsBackend& backend, AudioCache& cache,
                      std::size_t parallelism) {
  enum class Outcome { Cached, Synthesized, Failed };
  std::vector<Outcome> outcomes(keys.size(), Outcome::Failed);
  std::vector<std::string> messages(keys.size());
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      try {
        const bool hit = fs::is_regular_file(cache.path_for(keys[i]));
        synthesize(keys[i], backend, cache);
        outcomes[i] = hit ? Outcome::Cached : Outcome::Synthesized;
      } catch (const std::exception& e) {
        messages[i] = e.what();
      }
    }
  };

  const std::size_t n_threads = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(keys.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  FetchReport report;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    switch (outcomes[i]) {
      case Outcome::Cached: ++report.cached; break;
      case Outcome::Synthesized: ++report.synthesized; break;
      case Outcome::Failed: report.failures.push_back({keys[i].name().normalized(), messages[i]}); break;
    }
  }
  return report;
}

}  // namespace namesound::speech
