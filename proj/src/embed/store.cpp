#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "namesound/embed.hpp"
#include "namesound/error.hpp"

namespace namesound::embed {

std::size_t dimension(Backend backend) noexcept {
  return backend == Backend::MelGrid12288 ? kMelGridDim : kHandcraftedDim;
}

std::string_view to_string(Backend backend) noexcept {
  return backend == Backend::MelGrid12288 ? "mel" : "hand";
}

Backend parse_backend(std::string_view tag) {
  if (tag == "mel") return Backend::MelGrid12288;
  if (tag == "hand") return Backend::Handcrafted136;
  throw Error(ErrorKind::InvalidArgument, "unknown embedding backend '" + std::string(tag) + "' (mel|hand)");
}

Embedding::Embedding(speech::SpokenNameKey key, Backend backend, std::vector<double> vector)
    : key_(std::move(key)), backend_(backend), vector_(std::move(vector)) {
  if (vector_.size() != dimension(backend_)) {
    throw Error(ErrorKind::DimensionMismatch, std::string(to_string(backend_)) + " embedding needs dim " +
                                                  std::to_string(dimension(backend_)) + ", got " +
                                                  std::to_string(vector_.size()));
  }
  for (double v : vector_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, "non-finite embedding entry for '" + key_.name().raw() + "'");
    }
  }
}

Embedding embed(Backend backend, const speech::SpokenNameKey& key, const AudioClip& clip) {
  return backend == Backend::MelGrid12288 ? mel_grid_embedding(key, clip) : handcrafted_embedding(key, clip);
}

const Embedding* EmbeddingSet::find(std::string_view name) const {
  const std::string key = Name::parse_lenient(name).normalized();
  auto it = std::lower_bound(embeddings.begin(), embeddings.end(), key,
                             [](const Embedding& e, const std::string& k) { return e.name().normalized() < k; });
  if (it == embeddings.end() || it->name().normalized() != key) return nullptr;
  return &*it;
}

EmbeddingSet make_embedding_set(std::vector<Embedding> embeddings) {
  EmbeddingSet set;
  if (!embeddings.empty()) {
    const auto& first = embeddings.front();
    set.backend = first.backend();
    set.language = first.key().language();
    set.accent = first.key().accent();
    for (const auto& e : embeddings) {
      if (e.backend() != set.backend || e.key().language() != set.language || e.key().accent() != set.accent) {
        throw Error(ErrorKind::DimensionMismatch,
                    "embedding set mixes backends or voices at '" + e.name().raw() + "'");
      }
    }
  }
  std::sort(embeddings.begin(), embeddings.end(),
            [](const Embedding& a, const Embedding& b) { return a.name() < b.name(); });
  for (std::size_t i = 1; i < embeddings.size(); ++i) {
    if (embeddings[i].name() == embeddings[i - 1].name()) {
      throw Error(ErrorKind::DuplicateName, "duplicate embedding for '" + embeddings[i].name().normalized() + "'");
    }
  }
  set.embeddings = std::move(embeddings);
  return set;
}

void write_embeddings(std::ostream& out, const EmbeddingSet& set) {
  out << "#namesound-embeddings v1 backend=" << to_string(set.backend) << " dim=" << dimension(set.backend)
      << " lang=" << (set.language.empty() ? "und" : set.language)
      << " accent=" << (set.accent.empty() ? "default" : set.accent) << '\n';
  std::array<char, 32> buf{};
  for (const auto& e : set.embeddings) {
    const std::string& name = e.name().normalized();
    if (name.find_first_of("\t\n\r") != std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, "name contains a tab or newline: '" + name + "'");
    }
    out << name << '\t';
    bool first = true;
    for (double v : e.vector()) {
      if (!first) out << ' ';
      first = false;
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
      out.write(buf.data(), res.ptr - buf.data());
    }
    out << '\n';
  }
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingSet& set) {
  std::ostringstream text;
  write_embeddings(text, set);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << text.str();
  if (!out.flush()) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

namespace {

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::istringstream words(line);
  std::string magic, version;
  words >> magic >> version;
  if (magic != "#namesound-embeddings" || version != "v1") {
    throw Error(ErrorKind::MalformedRow, "line 1: not a namesound-embeddings v1 header");
  }
  std::map<std::string, std::string> fields;
  for (std::string word; words >> word;) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::MalformedRow, "line 1: bad header field '" + word + "'");
    fields[word.substr(0, eq)] = word.substr(eq + 1);
  }
  for (const char* required : {"backend", "dim", "lang", "accent"}) {
    if (!fields.contains(required)) {
      throw Error(ErrorKind::MalformedRow, std::string("line 1: header lacks ") + required);
    }
  }
  return fields;
}

}  // namespace

EmbeddingSet read_embeddings(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::MalformedRow, "empty embedding file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = parse_header(line);
  const Backend backend = parse_backend(header.at("backend"));
  std::size_t dim = 0;
  const std::string& dim_text = header.at("dim");
  if (std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim).ec != std::errc{} ||
      dim != dimension(backend)) {
    throw Error(ErrorKind::DimensionMismatch, "line 1: dim=" + dim_text + " does not match backend " +
                                                  header.at("backend"));
  }
  const std::string language = header.at("lang");
  const std::string accent = header.at("accent") == "default" ? std::string{} : header.at("accent");

  std::vector<Embedding> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::MalformedRow, "line " + std::to_string(line_no) + ": missing tab");
    }
    std::vector<double> values;
    values.reserve(dim);
    const char* p = line.data() + tab + 1;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc{}) {
        throw Error(ErrorKind::MalformedRow, "line " + std::to_string(line_no) + ": bad number");
      }
      values.push_back(v);
      p = res.ptr;
    }
    if (values.size() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "line " + std::to_string(line_no) + ": " +
                                                    std::to_string(values.size()) + " values, header says " +
                                                    std::to_string(dim));
    }
    Name name = Name::parse_lenient(std::string_view(line).substr(0, tab));
    rows.emplace_back(speech::SpokenNameKey(std::move(name), language, accent), backend, std::move(values));
  }
  EmbeddingSet set = make_embedding_set(std::move(rows));
  set.backend = backend;
  set.language = language;
  set.accent = accent;
  return set;
}

EmbeddingSet read_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return read_embeddings(in);
}

}  // namespace namesound::embed
