#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace namesound::phonetics {

enum class Algorithm { Soundex, Metaphone, DoubleMetaphone, Nysiis, Mra };

std::string_view to_string(Algorithm algo);
/// Accepts the CLI tags: soundex, metaphone, dmetaphone, nysiis, mra.
std::optional<Algorithm> parse_algorithm(std::string_view tag);

/// `secondary` is engaged only for Double Metaphone, where it equals
/// `primary` unless an ambiguous rule fired.
struct PhoneticCode {
  Algorithm algorithm = Algorithm::Soundex;
  std::string primary;
  std::optional<std::string> secondary;

  bool shares_code_with(const PhoneticCode& other) const;
  friend bool operator==(const PhoneticCode&, const PhoneticCode&) = default;
};

/// Uppercases and keeps only A-Z. Every encoder starts from this.
std::string letters_only(std::string_view name);

// Each encoder throws Error(NoEncodableContent) when `name` has no A-Z
// letter. Input case does not matter.

/// American Soundex: first letter plus three digits, H/W transparent between
/// equal codes.
PhoneticCode soundex(std::string_view name);

/// Original (1990) Metaphone.
PhoneticCode metaphone(std::string_view name);

/// Double Metaphone (2000): primary and alternate encodings, each up to four
/// characters.
PhoneticCode double_metaphone(std::string_view name);

/// NYSIIS without length truncation.
PhoneticCode nysiis(std::string_view name);

/// Match Rating Approach codex.
PhoneticCode mra(std::string_view name);

PhoneticCode encode(Algorithm algo, std::string_view name);

}  // namespace namesound::phonetics
