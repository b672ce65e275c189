#include <algorithm>
#include <cmath>
#include <cstring>

#include "namesound/audio.hpp"
#include "namesound/error.hpp"

namespace namesound {

AudioClip::AudioClip(std::vector<double> samples, std::uint32_t sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (samples_.empty()) throw Error(ErrorKind::EmptyClip, "audio clip has no samples");
  if (sample_rate_ == 0) throw Error(ErrorKind::InvalidArgument, "sample rate must be positive");
  for (double& s : samples_) {
    s = std::isfinite(s) ? std::clamp(s, -1.0, 1.0) : 0.0;
  }
}

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}
void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

[[noreturn]] void fail(const std::string& why) { throw Error(ErrorKind::DecodeError, why); }

double decode_sample(const std::uint8_t* p, std::uint16_t format, std::uint16_t bits) {
  if (format == kFormatFloat) {
    if (bits == 32) {
      float f;
      std::uint32_t u = read_u32(p);
      std::memcpy(&f, &u, sizeof f);
      return f;
    }
    std::uint64_t u = static_cast<std::uint64_t>(read_u32(p)) |
                      (static_cast<std::uint64_t>(read_u32(p + 4)) << 32);
    double d;
    std::memcpy(&d, &u, sizeof d);
    return d;
  }
  switch (bits) {
    case 8: return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16: return static_cast<std::int16_t>(read_u16(p)) / 32768.0;
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    default: return static_cast<std::int32_t>(read_u32(p)) / 2147483648.0;
  }
}

std::vector<std::uint8_t> wav_header(std::uint16_t format, std::uint16_t bits, std::uint32_t rate,
                                     std::uint32_t data_bytes) {
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, format);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * (bits / 8));
  put_u16(out, static_cast<std::uint16_t>(bits / 8));
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  return out;
}

}  // namespace

AudioClip decode_wav(std::span<const std::uint8_t> bytes) {
  const std::uint8_t* p = bytes.data();
  const std::size_t n = bytes.size();
  if (n < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0) {
    fail("not a RIFF/WAVE container");
  }
  std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= n) {
    const std::uint8_t* chunk = p + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > n) fail("truncated fmt chunk");
      format = read_u16(p + body);
      channels = read_u16(p + body + 2);
      rate = read_u32(p + body + 4);
      block_align = read_u16(p + body + 12);
      bits = read_u16(p + body + 14);
      if (format == kFormatExtensible) {
        if (size < 40) fail("truncated extensible fmt chunk");
        format = read_u16(p + body + 24);  // leading bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) fail("data chunk before fmt chunk");
      const bool pcm_ok = format == kFormatPcm && (bits == 8 || bits == 16 || bits == 24 || bits == 32);
      const bool float_ok = format == kFormatFloat && (bits == 32 || bits == 64);
      if (!pcm_ok && !float_ok) {
        fail("unsupported codec (format " + std::to_string(format) + ", " + std::to_string(bits) +
             " bits)");
      }
      if (channels == 0 || rate == 0) fail("invalid channel count or sample rate");
      const std::size_t width = bits / 8;
      if (block_align != width * channels) fail("inconsistent block alignment");
      // Encoders writing to a pipe cannot seek back, so they leave the size
      // as 0 or 0xFFFFFFFF; read to the end of the buffer in that case.
      const bool streamed = size == 0 || size == 0xFFFFFFFFu;
      if (!streamed && body + size > n) fail("truncated data chunk");
      const std::size_t available = streamed ? n - body : size;
      const std::size_t frames = available / block_align;
      if (frames == 0) fail("no audio frames");
      std::vector<double> samples(frames);
      for (std::size_t f = 0; f < frames; ++f) {
        double sum = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
          sum += decode_sample(p + body + f * block_align + c * width, format, bits);
        }
        samples[f] = sum / channels;
      }
      return AudioClip(std::move(samples), rate);
    }
    pos = body + size + (size & 1);
  }
  fail(have_fmt ? "missing data chunk" : "missing fmt chunk");
}

std::vector<std::uint8_t> encode_wav_pcm16(const AudioClip& clip) {
  const auto samples = clip.samples();
  auto out = wav_header(kFormatPcm, 16, clip.sample_rate(), static_cast<std::uint32_t>(samples.size() * 2));
  for (double s : samples) {
    const long q = std::lround(s * 32768.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L))));
  }
  return out;
}

std::vector<std::uint8_t> encode_wav_float32(const AudioClip& clip) {
  const auto samples = clip.samples();
  auto out = wav_header(kFormatFloat, 32, clip.sample_rate(), static_cast<std::uint32_t>(samples.size() * 4));
  for (double s : samples) {
    const float f = static_cast<float>(s);
    std::uint32_t u;
    std::memcpy(&u, &f, sizeof u);
    put_u32(out, u);
  }
  return out;
}

}  // namespace namesound
