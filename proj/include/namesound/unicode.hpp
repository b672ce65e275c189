#pragma once

#include <string>
#include <string_view>

namespace namesound::unicode {

/// Decodes UTF-8 into code points. Malformed sequences decode to U+FFFD,
/// one replacement per offending byte.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

/// Simple (1:1) case folding for Latin, Greek and Cyrillic letters.
char32_t fold_case(char32_t c);
std::string fold_case(std::string_view text);

/// Trims ASCII whitespace and U+00A0 from both ends.
std::string_view trim(std::string_view text);

std::size_t code_point_count(std::string_view text);

}  // namespace namesound::unicode
