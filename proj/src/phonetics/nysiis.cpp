#include "detail.hpp"

namespace namesound::phonetics {

namespace {

bool starts_with(const std::string& s, std::string_view p) { return s.starts_with(p); }
bool ends_with(const std::string& s, std::string_view p) { return s.ends_with(p); }

}  // namespace

PhoneticCode nysiis(std::string_view name) {
  std::string s = detail::require_letters(name);
  using detail::is_vowel;

  if (starts_with(s, "MAC")) {
    s.replace(0, 3, "MCC");
  } else if (starts_with(s, "KN")) {
    s.erase(0, 1);
  } else if (starts_with(s, "K")) {
    s[0] = 'C';
  } else if (starts_with(s, "PH") || starts_with(s, "PF")) {
    s.replace(0, 2, "FF");
  } else if (starts_with(s, "SCH")) {
    s.replace(0, 3, "SSS");
  }

  if (s.size() >= 2) {
    if (ends_with(s, "IE") || ends_with(s, "EE")) {
      s.replace(s.size() - 2, 2, "Y");
    } else if (ends_with(s, "DT") || ends_with(s, "RT") || ends_with(s, "RD") ||
               ends_with(s, "NT") || ends_with(s, "ND")) {
      s.replace(s.size() - 2, 2, "D");
    }
  }

  std::string key(1, s[0]);
  const std::size_t n = s.size();
  for (std::size_t i = 1; i < n; ++i) {
    const char c = s[i];
    const char prev = s[i - 1];
    const bool has_next = i + 1 < n;
    std::string out(1, c);
    if (c == 'E' && has_next && s[i + 1] == 'V') {
      out = "AF";
      ++i;
    } else if (is_vowel(c)) {
      out = "A";
    } else if (c == 'Q') {
      out = "G";
    } else if (c == 'Z') {
      out = "S";
    } else if (c == 'M') {
      out = "N";
    } else if (c == 'K') {
      out = (has_next && s[i + 1] == 'N') ? "N" : "C";
    } else if (c == 'S' && s.compare(i + 1, 2, "CH") == 0) {
      out = "SS";
      i += 2;
    } else if (c == 'P' && has_next && s[i + 1] == 'H') {
      out = "F";
      ++i;
    } else if (c == 'H' && (!is_vowel(prev) || !has_next || !is_vowel(s[i + 1]))) {
      out = is_vowel(prev) ? "A" : std::string(1, prev);
    } else if (c == 'W' && is_vowel(prev)) {
      out = std::string(1, prev);
    }
    if (out.back() != key.back()) key += out;
  }

  if (key.size() > 1 && key.back() == 'S') key.pop_back();
  if (ends_with(key, "AY")) key.replace(key.size() - 2, 2, "Y");
  if (key.size() > 1 && key.back() == 'A') key.pop_back();
  return {Algorithm::Nysiis, key, std::nullopt};
}

}  // namespace namesound::phonetics
