#include "detail.hpp"

namespace namesound::phonetics {

namespace {

bool is_front_vowel(char c) { return c == 'I' || c == 'E' || c == 'Y'; }

}  // namespace

PhoneticCode metaphone(std::string_view name) {
  std::string s = detail::require_letters(name);
  using detail::is_vowel;

  if (s.starts_with("KN") || s.starts_with("GN") || s.starts_with("PN") ||
      s.starts_with("WR") || s.starts_with("AE")) {
    s.erase(0, 1);
  }

  const std::size_t n = s.size();
  const auto at = [&](std::size_t i) -> char { return i < n ? s[i] : '\0'; };
  std::string code;

  for (std::size_t i = 0; i < n; ++i) {
    const char c = s[i];
    const char next = at(i + 1);
    const char after = at(i + 2);

    // A doubled letter is coded once, at the last letter of the run. CC is
    // exempt ("accent" -> AKSNT).
    if (c == next && c != 'C') continue;
    // Word-initial position, counting a leading run as a single letter.
    const bool initial = s.find_first_not_of(c) >= i;

    switch (c) {
      case 'A': case 'E': case 'I': case 'O': case 'U':
        if (initial) code.push_back(c);
        break;
      case 'B':
        if (!(i > 0 && s[i - 1] == 'M' && next == '\0')) code.push_back('B');
        break;
      case 'C':
        if ((next == 'I' && after == 'A') || next == 'H') {
          code.push_back('X');
          ++i;
        } else if (is_front_vowel(next)) {
          code.push_back('S');
          ++i;
        } else {
          code.push_back('K');
        }
        break;
      case 'D':
        if (next == 'G' && is_front_vowel(after)) {
          code.push_back('J');
          i += 2;
        } else {
          code.push_back('T');
        }
        break;
      case 'F': case 'J': case 'L': case 'M': case 'N': case 'R':
        code.push_back(c);
        break;
      case 'G':
        if (is_front_vowel(next)) {
          code.push_back('J');
        } else if (next == 'H' && after != '\0' && !is_vowel(after)) {
          ++i;  // silent GH before a consonant
        } else if (next == 'N' && after == '\0') {
          ++i;  // silent final GN
        } else {
          code.push_back('K');
        }
        break;
      case 'H':
        if (initial || is_vowel(next) || !is_vowel(s[i - 1])) code.push_back('H');
        break;
      case 'K':
        if (initial || s[i - 1] != 'C') code.push_back('K');
        break;
      case 'P':
        if (next == 'H') {
          code.push_back('F');
          ++i;
        } else {
          code.push_back('P');
        }
        break;
      case 'Q':
        code.push_back('K');
        break;
      case 'S':
        if (next == 'H') {
          code.push_back('X');
          ++i;
        } else if (next == 'I' && (after == 'O' || after == 'A')) {
          code.push_back('X');
          i += 2;
        } else {
          code.push_back('S');
        }
        break;
      case 'T':
        if (next == 'I' && (after == 'O' || after == 'A')) {
          code.push_back('X');
        } else if (next == 'H') {
          code.push_back('0');
          ++i;
        } else if (!(next == 'C' && after == 'H')) {
          code.push_back('T');
        }
        break;
      case 'V':
        code.push_back('F');
        break;
      case 'W':
        if (initial && next == 'H') {
          code.push_back('W');
          ++i;
        } else if (is_vowel(next)) {
          code.push_back('W');
        }
        break;
      case 'X':
        if (initial) {
          code.push_back((next == 'H' || (next == 'I' && (after == 'O' || after == 'A'))) ? 'X'
                                                                                          : 'S');
        } else {
          code += "KS";
        }
        break;
      case 'Y':
        if (is_vowel(next)) code.push_back('Y');
        break;
      case 'Z':
        code.push_back('S');
        break;
      default:
        break;
    }
  }

  // Inputs made only of silent letters ("wy") would otherwise encode to
  // nothing; fall back to the first letter.
  if (code.empty()) code.push_back(s[0]);
  return {Algorithm::Metaphone, code, std::nullopt};
}

}  // namespace namesound::phonetics
