#include <array>

#include "namesound/error.hpp"
#include "namesound/phonetics.hpp"

namespace namesound::phonetics {

namespace {

constexpr std::array<std::pair<std::string_view, Algorithm>, 5> kTags{{
    {"soundex", Algorithm::Soundex},
    {"metaphone", Algorithm::Metaphone},
    {"dmetaphone", Algorithm::DoubleMetaphone},
    {"nysiis", Algorithm::Nysiis},
    {"mra", Algorithm::Mra},
}};

}  // namespace

std::string_view to_string(Algorithm algo) {
  for (const auto& [tag, a] : kTags) {
    if (a == algo) return tag;
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view tag) {
  for (const auto& [t, a] : kTags) {
    if (t == tag) return a;
  }
  return std::nullopt;
}

bool PhoneticCode::shares_code_with(const PhoneticCode& other) const {
  if (primary == other.primary) return true;
  if (algorithm != Algorithm::DoubleMetaphone) return false;
  const std::string& mine = secondary.value_or(primary);
  const std::string& theirs = other.secondary.value_or(other.primary);
  return mine == other.primary || primary == theirs || mine == theirs;
}

std::string letters_only(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c >= 'a' && c <= 'z') {
      out.push_back(static_cast<char>(c - 'a' + 'A'));
    } else if (c >= 'A' && c <= 'Z') {
      out.push_back(c);
    }
  }
  return out;
}

PhoneticCode encode(Algorithm algo, std::string_view name) {
  switch (algo) {
    case Algorithm::Soundex: return soundex(name);
    case Algorithm::Metaphone: return metaphone(name);
    case Algorithm::DoubleMetaphone: return double_metaphone(name);
    case Algorithm::Nysiis: return nysiis(name);
    case Algorithm::Mra: return mra(name);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown phonetic algorithm");
}

}  // namespace namesound::phonetics
