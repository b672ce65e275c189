#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace namesound {

/// Minimum length, in code points, of a corpus name. Shorter tokens are
/// mostly initials and abbreviations.
inline constexpr std::size_t kMinNameLength = 3;

/// A forename in canonical form. Ordering and equality use only the
/// normalized form.
class Name {
 public:
  /// Trims and case-folds `raw`. Throws Error(Empty) for blank input and
  /// Error(TooShort) when fewer than kMinNameLength code points remain.
  static Name parse(std::string_view raw);

  /// Like parse() without the length rule; ground-truth keys such as "ed"
  /// go through here.
  static Name parse_lenient(std::string_view raw);

  const std::string& raw() const noexcept { return raw_; }
  const std::string& normalized() const noexcept { return normalized_; }

  friend bool operator==(const Name& a, const Name& b) { return a.normalized_ == b.normalized_; }
  friend std::strong_ordering operator<=>(const Name& a, const Name& b) {
    return a.normalized_ <=> b.normalized_;
  }

 private:
  Name(std::string raw, std::string normalized)
      : raw_(std::move(raw)), normalized_(std::move(normalized)) {}

  std::string raw_;
  std::string normalized_;
};

Name normalize_name(std::string_view raw);

/// Heterogeneous ordering so containers keyed by Name accept string lookups.
struct NameLess {
  using is_transparent = void;
  bool operator()(const Name& a, const Name& b) const { return a < b; }
  bool operator()(const Name& a, std::string_view b) const { return a.normalized() < b; }
  bool operator()(std::string_view a, const Name& b) const { return a < b.normalized(); }
};

struct RejectedLine {
  std::size_t line = 0;
  std::string text;
  std::string reason;
};

struct CorpusLoadSummary {
  std::size_t accepted = 0;
  std::size_t duplicates = 0;
  std::vector<RejectedLine> rejected;
};

/// Deduplicated names sorted by normalized form.
class NameCorpus {
 public:
  NameCorpus() = default;
  NameCorpus(std::vector<Name> names, std::string source_label);

  const std::vector<Name>& names() const noexcept { return names_; }
  const std::string& source_label() const noexcept { return source_label_; }
  std::size_t size() const noexcept { return names_.size(); }
  bool contains(std::string_view normalized) const;

  const CorpusLoadSummary& summary() const noexcept { return summary_; }
  void set_summary(CorpusLoadSummary summary) { summary_ = std::move(summary); }

  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }

 private:
  std::vector<Name> names_;
  std::string source_label_;
  CorpusLoadSummary summary_;
};

/// One raw name per line; blank lines and `#` comments are skipped.
NameCorpus parse_corpus(std::string_view text, std::string source_label);
NameCorpus load_corpus(const std::filesystem::path& path);

struct TruthLoadSummary {
  std::size_t rows = 0;
  std::size_t self_pairs = 0;
  std::size_t duplicate_pairs = 0;
};

/// Verified synonyms per query name. No key maps to itself and every set is
/// non-empty.
class SynonymTruth {
 public:
  using Map = std::map<Name, std::set<Name>, NameLess>;

  SynonymTruth() = default;
  explicit SynonymTruth(Map entries);

  const Map& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// nullptr when `query` has no entry.
  const std::set<Name>* find(std::string_view query) const;

  const TruthLoadSummary& summary() const noexcept { return summary_; }
  void set_summary(TruthLoadSummary summary) { summary_ = summary; }

 private:
  Map entries_;
  TruthLoadSummary summary_;
};

/// CSV with header `name,synonym`. Throws Error(MalformedRow) naming the
/// 1-based line for rows without exactly two non-empty fields.
SynonymTruth parse_ground_truth(std::string_view text);
SynonymTruth load_ground_truth(const std::filesystem::path& path);

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes.
std::vector<std::string> split_csv_line(std::string_view line);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace namesound
