#include "namesound/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "namesound/error.hpp"
#include "namesound/unicode.hpp"

namespace namesound {

Name Name::parse_lenient(std::string_view raw) {
  const std::string_view trimmed = unicode::trim(raw);
  if (trimmed.empty()) throw Error(ErrorKind::Empty, "blank name");
  return Name(std::string(raw), unicode::fold_case(trimmed));
}

Name Name::parse(std::string_view raw) {
  Name name = parse_lenient(raw);
  if (unicode::code_point_count(name.normalized()) < kMinNameLength) {
    throw Error(ErrorKind::TooShort, "'" + name.normalized() + "' has fewer than " +
                                         std::to_string(kMinNameLength) + " characters");
  }
  return name;
}

Name normalize_name(std::string_view raw) { return Name::parse(raw); }

NameCorpus::NameCorpus(std::vector<Name> names, std::string source_label)
    : names_(std::move(names)), source_label_(std::move(source_label)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

bool NameCorpus::contains(std::string_view normalized) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), normalized,
                             [](const Name& n, std::string_view v) { return n.normalized() < v; });
  return it != names_.end() && it->normalized() == normalized;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::IoError, "read failed: " + path.string());
  return buf.str();
}

namespace {

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (nl < text.size() || !line.empty()) fn(line_no, line);
    pos = nl + 1;
  }
}

}  // namespace

NameCorpus parse_corpus(std::string_view text, std::string source_label) {
  std::vector<Name> names;
  CorpusLoadSummary summary;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const std::string_view trimmed = unicode::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') return;
    try {
      names.push_back(Name::parse(trimmed));
    } catch (const Error& e) {
      summary.rejected.push_back({line_no, std::string(line), std::string(to_string(e.kind()))});
    }
  });
  const std::size_t valid = names.size();
  NameCorpus corpus(std::move(names), std::move(source_label));
  if (corpus.size() == 0) {
    throw Error(ErrorKind::EmptyCorpus, "no valid names in " + corpus.source_label());
  }
  summary.accepted = corpus.size();
  summary.duplicates = valid - corpus.size();
  corpus.set_summary(std::move(summary));
  return corpus;
}

NameCorpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_text_file(path), path.filename().string());
}

SynonymTruth::SynonymTruth(Map entries) : entries_(std::move(entries)) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    it->second.erase(it->first);
    it = it->second.empty() ? entries_.erase(it) : std::next(it);
  }
}

const std::set<Name>* SynonymTruth::find(std::string_view query) const {
  auto it = entries_.find(query);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

SynonymTruth parse_ground_truth(std::string_view text) {
  SynonymTruth::Map entries;
  TruthLoadSummary summary;
  bool first = true;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (unicode::trim(line).empty()) return;
    const auto fields = split_csv_line(line);
    if (first) {
      first = false;
      if (fields.size() == 2 && unicode::trim(fields[0]) == "name" &&
          unicode::trim(fields[1]) == "synonym") {
        return;
      }
    }
    const auto malformed = [&](const std::string& why) {
      return Error(ErrorKind::MalformedRow, "line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 2) {
      throw malformed("expected 2 fields, found " + std::to_string(fields.size()));
    }
    if (unicode::trim(fields[0]).empty() || unicode::trim(fields[1]).empty()) {
      throw malformed("empty field");
    }
    ++summary.rows;
    Name key = Name::parse_lenient(fields[0]);
    Name value = Name::parse_lenient(fields[1]);
    if (key == value) {
      ++summary.self_pairs;
      return;
    }
    if (!entries[std::move(key)].insert(std::move(value)).second) ++summary.duplicate_pairs;
  });
  SynonymTruth truth(std::move(entries));
  truth.set_summary(summary);
  return truth;
}

SynonymTruth load_ground_truth(const std::filesystem::path& path) {
  return parse_ground_truth(read_text_file(path));
}

}  // namespace namesound
