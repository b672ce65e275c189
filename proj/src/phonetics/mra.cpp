#include "detail.hpp"

namespace namesound::phonetics {

PhoneticCode mra(std::string_view name) {
  const std::string s = detail::require_letters(name);
  std::string codex;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (i == 0 || (!detail::is_vowel(c) && c != s[i - 1])) codex.push_back(c);
  }
  if (codex.size() > 6) codex = codex.substr(0, 3) + codex.substr(codex.size() - 3);
  return {Algorithm::Mra, codex, std::nullopt};
}

}  // namespace namesound::phonetics
