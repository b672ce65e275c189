#pragma once

#include <string>
#include <string_view>

#include "namesound/error.hpp"
#include "namesound/phonetics.hpp"

namespace namesound::phonetics::detail {

inline std::string require_letters(std::string_view name) {
  std::string s = letters_only(name);
  if (s.empty()) {
    throw Error(ErrorKind::NoEncodableContent, "'" + std::string(name) + "' has no A-Z letters");
  }
  return s;
}

inline bool is_vowel(char c) {
  return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U';
}

}  // namespace namesound::phonetics::detail
