#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>

#include <sys/wait.h>

#include "namesound/error.hpp"
#include "namesound/speech.hpp"
#include "namesound/unicode.hpp"

namespace namesound::speech {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

void replace_all(std::string& s, std::string_view from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

}  // namespace

SpokenNameKey::SpokenNameKey(Name name, std::string language, std::string accent)
    : name_(std::move(name)),
      language_(lower_ascii(unicode::trim(language))),
      accent_(lower_ascii(unicode::trim(accent))) {
  if (language_.empty()) throw Error(ErrorKind::InvalidArgument, "language tag must be non-empty");
}

std::string SpokenNameKey::accent_label() const { return accent_.empty() ? "default" : accent_; }

FixtureBackend::FixtureBackend(std::filesystem::path directory) : directory_(std::move(directory)) {
  if (!std::filesystem::is_directory(directory_)) {
    throw Error(ErrorKind::BackendUnavailable, "fixture directory not found: " + directory_.string());
  }
}

RawAudio FixtureBackend::synthesize_raw(const SpokenNameKey& key) const {
  const std::string base = key.name().normalized() + "." + key.language();
  std::vector<std::filesystem::path> candidates;
  if (!key.accent().empty()) candidates.push_back(directory_ / (base + "." + key.accent() + ".wav"));
  candidates.push_back(directory_ / (base + ".wav"));
  for (const auto& path : candidates) {
    if (!std::filesystem::is_regular_file(path)) continue;
    const std::string text = read_text_file(path);
    return {std::vector<std::uint8_t>(text.begin(), text.end()), "wav"};
  }
  throw Error(ErrorKind::SynthesisFailed, "no fixture audio for '" + key.name().normalized() + "' (" +
                                              candidates.back().filename().string() + ")");
}

CommandBackend::CommandBackend(std::string command_template) : template_(std::move(command_template)) {
  if (template_.empty()) throw Error(ErrorKind::BackendUnavailable, "empty TTS command template");
}

std::string CommandBackend::render_command(const SpokenNameKey& key) const {
  std::string cmd = template_;
  replace_all(cmd, "{name}", shell_quote(key.name().normalized()));
  replace_all(cmd, "{lang}", shell_quote(key.language()));
  replace_all(cmd, "{accent}", shell_quote(key.accent()));
  return cmd;
}

RawAudio CommandBackend::synthesize_raw(const SpokenNameKey& key) const {
  const std::string cmd = render_command(key);
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw Error(ErrorKind::BackendUnavailable, "cannot start: " + cmd);
  RawAudio raw{{}, "wav"};
  std::array<std::uint8_t, 8192> buf;
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    raw.bytes.insert(raw.bytes.end(), buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(got));
  }
  const int status = ::pclose(pipe);
  if (status == -1) throw Error(ErrorKind::BackendUnavailable, "lost TTS process: " + cmd);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
      throw Error(ErrorKind::BackendUnavailable, "TTS command not found: " + cmd);
    }
    throw Error(ErrorKind::SynthesisFailed,
                "TTS command failed for '" + key.name().normalized() + "' (status " + std::to_string(status) + ")");
  }
  if (raw.bytes.empty()) {
    throw Error(ErrorKind::SynthesisFailed, "TTS command produced no audio for '" + key.name().normalized() + "'");
  }
  return raw;
}

std::unique_ptr<TtsBackend> backend_from_environment() {
  const char* cmd = std::getenv("NAMESOUND_TTS_CMD");
  if (cmd == nullptr || *cmd == '\0') {
    throw Error(ErrorKind::BackendUnavailable, "NAMESOUND_TTS_CMD is not set");
  }
  return std::make_unique<CommandBackend>(cmd);
}

}  // namespace namesound::speech
