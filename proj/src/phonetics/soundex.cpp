#include "detail.hpp"

namespace namesound::phonetics {

namespace {

// '0' marks letters that carry no digit (vowels, H, W, Y).
char soundex_digit(char c) {
  switch (c) {
    case 'B': case 'F': case 'P': case 'V':
      return '1';
    case 'C': case 'G': case 'J': case 'K': case 'Q': case 'S': case 'X': case 'Z':
      return '2';
    case 'D': case 'T':
      return '3';
    case 'L':
      return '4';
    case 'M': case 'N':
      return '5';
    case 'R':
      return '6';
    default:
      return '0';
  }
}

}  // namespace

PhoneticCode soundex(std::string_view name) {
  const std::string s = detail::require_letters(name);
  std::string code(1, s[0]);
  char last = soundex_digit(s[0]);
  for (std::size_t i = 1; i < s.size() && code.size() < 4; ++i) {
    const char d = soundex_digit(s[i]);
    if (d != '0') {
      if (d != last) code.push_back(d);
      last = d;
    } else if (s[i] != 'H' && s[i] != 'W') {
      // Vowels separate equal digits; H and W do not.
      last = '0';
    }
  }
  code.resize(4, '0');
  return {Algorithm::Soundex, code, std::nullopt};
}

}  // namespace namesound::phonetics
