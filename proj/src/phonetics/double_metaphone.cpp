#include <initializer_list>

#include "detail.hpp"

namespace namesound::phonetics {

namespace {

constexpr std::size_t kMaxCodeLength = 4;

// Mirrors the reference rule tables letter by letter; positions are signed
// because many rules look behind the current letter.
class DoubleMetaphoneEncoder {
 public:
  explicit DoubleMetaphoneEncoder(std::string word)
      : length_(static_cast<int>(word.size())), last_(length_ - 1), word_(std::move(word) + "     ") {
    slavo_germanic_ = word_.find('W') != std::string::npos || word_.find('K') != std::string::npos ||
                      word_.find("CZ") != std::string::npos;
  }

  std::pair<std::string, std::string> run();

 private:
  char at(int i) const {
    return (i < 0 || i >= static_cast<int>(word_.size())) ? '\0' : word_[static_cast<std::size_t>(i)];
  }

  bool vowel(int i) const {
    const char c = at(i);
    return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U' || c == 'Y';
  }

  bool string_at(int start, std::initializer_list<std::string_view> options) const {
    if (start < 0) return false;
    for (std::string_view opt : options) {
      if (static_cast<std::size_t>(start) + opt.size() <= word_.size() &&
          word_.compare(static_cast<std::size_t>(start), opt.size(), opt) == 0) {
        return true;
      }
    }
    return false;
  }

  void add(std::string_view main) { add(main, main); }
  void add(std::string_view main, std::string_view alt) {
    primary_ += main;
    // A lone space as the alternate means "nothing in the secondary code".
    if (alt != " ") secondary_ += alt;
  }

  bool germanic_prefix() const { return string_at(0, {"VAN ", "VON "}) || string_at(0, {"SCH"}); }

  int encode_c(int cur);
  int encode_g(int cur);
  int encode_j(int cur);
  int encode_s(int cur);
  int encode_w(int cur);

  int length_;
  int last_;
  std::string word_;
  bool slavo_germanic_ = false;
  std::string primary_;
  std::string secondary_;
};

int DoubleMetaphoneEncoder::encode_c(int cur) {
  // Germanic ACH, as in "bacher"
  if (cur > 1 && !vowel(cur - 2) && string_at(cur - 1, {"ACH"}) && at(cur + 2) != 'I' &&
      (at(cur + 2) != 'E' || string_at(cur - 2, {"BACHER", "MACHER"}))) {
    add("K");
    return cur + 2;
  }
  if (cur == 0 && string_at(cur, {"CAESAR"})) {
    add("S");
    return cur + 2;
  }
  if (string_at(cur, {"CHIA"})) {
    add("K");
    return cur + 2;
  }
  if (string_at(cur, {"CH"})) {
    if (cur > 0 && string_at(cur, {"CHAE"})) {
      add("K", "X");
      return cur + 2;
    }
    // Greek roots: "chorus", "character"
    if (cur == 0 &&
        (string_at(cur + 1, {"HARAC", "HARIS"}) || string_at(cur + 1, {"HOR", "HYM", "HIA", "HEM"})) &&
        !string_at(0, {"CHORE"})) {
      add("K");
      return cur + 2;
    }
    if (germanic_prefix() || string_at(cur - 2, {"ORCHES", "ARCHIT", "ORCHID"}) ||
        string_at(cur + 2, {"T", "S"}) ||
        ((string_at(cur - 1, {"A", "O", "U", "E"}) || cur == 0) &&
         string_at(cur + 2, {"L", "R", "N", "M", "B", "H", "F", "V", "W", " "}))) {
      add("K");
    } else if (cur > 0) {
      if (string_at(0, {"MC"})) {
        add("K");
      } else {
        add("X", "K");
      }
    } else {
      add("X");
    }
    return cur + 2;
  }
  if (string_at(cur, {"CZ"}) && !string_at(cur - 2, {"WICZ"})) {
    add("S", "X");
    return cur + 2;
  }
  if (string_at(cur + 1, {"CIA"})) {
    add("X");
    return cur + 3;
  }
  // Double C, except "McClellan"
  if (string_at(cur, {"CC"}) && !(cur == 1 && at(0) == 'M')) {
    if (string_at(cur + 2, {"I", "E", "H"}) && !string_at(cur + 2, {"HU"})) {
      if ((cur == 1 && at(cur - 1) == 'A') || string_at(cur - 1, {"UCCEE", "UCCES"})) {
        add("KS");
      } else {
        add("X");
      }
      return cur + 3;
    }
    add("K");
    return cur + 2;
  }
  if (string_at(cur, {"CK", "CG", "CQ"})) {
    add("K");
    return cur + 2;
  }
  if (string_at(cur, {"CI", "CE", "CY"})) {
    if (string_at(cur, {"CIO", "CIE", "CIA"})) {
      add("S", "X");
    } else {
      add("S");
    }
    return cur + 2;
  }
  add("K");
  if (string_at(cur + 1, {" C", " Q", " G"})) return cur + 3;
  if (string_at(cur + 1, {"C", "K", "Q"}) && !string_at(cur + 1, {"CE", "CI"})) return cur + 2;
  return cur + 1;
}

int DoubleMetaphoneEncoder::encode_g(int cur) {
  if (at(cur + 1) == 'H') {
    if (cur > 0 && !vowel(cur - 1)) {
      add("K");
      return cur + 2;
    }
    if (cur == 0) {
      add(at(cur + 2) == 'I' ? "J" : "K");
      return cur + 2;
    }
    // Parker's rule: "hugh", "bough", "broughton"
    if ((cur > 1 && string_at(cur - 2, {"B", "H", "D"})) ||
        (cur > 2 && string_at(cur - 3, {"B", "H", "D"})) ||
        (cur > 3 && string_at(cur - 4, {"B", "H"}))) {
      return cur + 2;
    }
    if (cur > 2 && at(cur - 1) == 'U' && string_at(cur - 3, {"C", "G", "L", "R", "T"})) {
      add("F");  // "laugh", "tough"
    } else if (cur > 0 && at(cur - 1) != 'I') {
      add("K");
    }
    return cur + 2;
  }
  if (at(cur + 1) == 'N') {
    if (cur == 1 && vowel(0) && !slavo_germanic_) {
      add("KN", "N");
    } else if (!string_at(cur + 2, {"EY"}) && at(cur + 1) != 'Y' && !slavo_germanic_) {
      add("N", "KN");
    } else {
      add("KN");
    }
    return cur + 2;
  }
  if (string_at(cur + 1, {"LI"}) && !slavo_germanic_) {
    add("KL", "L");  // "tagliaro"
    return cur + 2;
  }
  if (cur == 0 && (at(cur + 1) == 'Y' || string_at(cur + 1, {"ES", "EP", "EB", "EL", "EY", "IB", "IL",
                                                               "IN", "IE", "EI", "ER"}))) {
    add("K", "J");
    return cur + 2;
  }
  if ((string_at(cur + 1, {"ER"}) || at(cur + 1) == 'Y') &&
      !string_at(0, {"DANGER", "RANGER", "MANGER"}) && !string_at(cur - 1, {"E", "I"}) &&
      !string_at(cur - 1, {"RGY", "OGY"})) {
    add("K", "J");
    return cur + 2;
  }
  // Italian, as in "biaggi"
  if (string_at(cur + 1, {"E", "I", "Y"}) || string_at(cur - 1, {"AGGI", "OGGI"})) {
    if (germanic_prefix() || string_at(cur + 1, {"ET"})) {
      add("K");
    } else if (string_at(cur + 1, {"IER "})) {
      add("J");
    } else {
      add("J", "K");
    }
    return cur + 2;
  }
  add("K");
  return at(cur + 1) == 'G' ? cur + 2 : cur + 1;
}

int DoubleMetaphoneEncoder::encode_j(int cur) {
  if (string_at(cur, {"JOSE"}) || string_at(0, {"SAN "})) {
    if ((cur == 0 && at(cur + 4) == ' ') || string_at(0, {"SAN "})) {
      add("H");
    } else {
      add("J", "H");
    }
    return cur + 1;
  }
  if (cur == 0 && !string_at(cur, {"JOSE"})) {
    add("J", "A");
  } else if (vowel(cur - 1) && !slavo_germanic_ && (at(cur + 1) == 'A' || at(cur + 1) == 'O')) {
    add("J", "H");
  } else if (cur == last_) {
    add("J", " ");
  } else if (!string_at(cur + 1, {"L", "T", "K", "S", "N", "M", "B", "Z"}) &&
             !string_at(cur - 1, {"S", "K", "L"})) {
    add("J");
  }
  return at(cur + 1) == 'J' ? cur + 2 : cur + 1;
}

int DoubleMetaphoneEncoder::encode_s(int cur) {
  if (string_at(cur - 1, {"ISL", "YSL"})) return cur + 1;  // "island", "carlisle"
  if (cur == 0 && string_at(cur, {"SUGAR"})) {
    add("X", "S");
    return cur + 1;
  }
  if (string_at(cur, {"SH"})) {
    add(string_at(cur + 1, {"HEIM", "HOEK", "HOLM", "HOLZ"}) ? "S" : "X");
    return cur + 2;
  }
  if (string_at(cur, {"SIO", "SIA"}) || string_at(cur, {"SIAN"})) {
    if (!slavo_germanic_) {
      add("S", "X");
    } else {
      add("S");
    }
    return cur + 3;
  }
  // "smith" vs "schmidt", "snider" vs "schneider"; slavic -SZ-
  if ((cur == 0 && string_at(cur + 1, {"M", "N", "L", "W"})) || string_at(cur + 1, {"Z"})) {
    add("S", "X");
    return string_at(cur + 1, {"Z"}) ? cur + 2 : cur + 1;
  }
  if (string_at(cur, {"SC"})) {
    if (at(cur + 2) == 'H') {
      // Dutch, as in "school"
      if (string_at(cur + 3, {"OO", "ER", "EN", "UY", "ED", "EM"})) {
        if (string_at(cur + 3, {"ER", "EN"})) {
          add("X", "SK");
        } else {
          add("SK");
        }
        return cur + 3;
      }
      if (cur == 0 && !vowel(3) && at(3) != 'W') {
        add("X", "S");
      } else {
        add("X");
      }
      return cur + 3;
    }
    if (string_at(cur + 2, {"I", "E", "Y"})) {
      add("S");
    } else {
      add("SK");
    }
    return cur + 3;
  }
  // French, as in "artois"
  if (cur == last_ && string_at(cur - 2, {"AI", "OI"})) {
    add("", "S");
  } else {
    add("S");
  }
  return string_at(cur + 1, {"S", "Z"}) ? cur + 2 : cur + 1;
}

int DoubleMetaphoneEncoder::encode_w(int cur) {
  if (string_at(cur, {"WR"})) {
    add("R");
    return cur + 2;
  }
  if (cur == 0 && (vowel(cur + 1) || string_at(cur, {"WH"}))) {
    if (vowel(cur + 1)) {
      add("A", "F");
    } else {
      add("A");
    }
  }
  if ((cur == last_ && vowel(cur - 1)) || string_at(cur - 1, {"EWSKI", "EWSKY", "OWSKI", "OWSKY"}) ||
      string_at(0, {"SCH"})) {
    add("", "F");
    return cur + 1;
  }
  if (string_at(cur, {"WICZ", "WITZ"})) {
    add("TS", "FX");
    return cur + 4;
  }
  return cur + 1;
}

std::pair<std::string, std::string> DoubleMetaphoneEncoder::run() {
  int cur = 0;
  if (string_at(0, {"GN", "KN", "PN", "WR", "PS"})) cur += 1;
  if (at(0) == 'X') {
    add("S");  // "Xavier"
    cur += 1;
  }

  while ((primary_.size() < kMaxCodeLength || secondary_.size() < kMaxCodeLength) && cur < length_) {
    const char c = at(cur);
    switch (c) {
      case 'A': case 'E': case 'I': case 'O': case 'U': case 'Y':
        if (cur == 0) add("A");
        cur += 1;
        break;
      case 'B':
        add("P");
        cur += at(cur + 1) == 'B' ? 2 : 1;
        break;
      case 'C':
        cur = encode_c(cur);
        break;
      case 'D':
        if (string_at(cur, {"DG"})) {
          if (string_at(cur + 2, {"I", "E", "Y"})) {
            add("J");  // "edge"
            cur += 3;
          } else {
            add("TK");  // "edgar"
            cur += 2;
          }
        } else if (string_at(cur, {"DT", "DD"})) {
          add("T");
          cur += 2;
        } else {
          add("T");
          cur += 1;
        }
        break;
      case 'F':
        cur += at(cur + 1) == 'F' ? 2 : 1;
        add("F");
        break;
      case 'G':
        cur = encode_g(cur);
        break;
      case 'H':
        if ((cur == 0 || vowel(cur - 1)) && vowel(cur + 1)) {
          add("H");
          cur += 2;
        } else {
          cur += 1;
        }
        break;
      case 'J':
        cur = encode_j(cur);
        break;
      case 'K':
        cur += at(cur + 1) == 'K' ? 2 : 1;
        add("K");
        break;
      case 'L':
        if (at(cur + 1) == 'L') {
          // Spanish, as in "cabrillo", "gallegos"
          if ((cur == length_ - 3 && string_at(cur - 1, {"ILLO", "ILLA", "ALLE"})) ||
              ((string_at(last_ - 1, {"AS", "OS"}) || string_at(last_, {"A", "O"})) &&
               string_at(cur - 1, {"ALLE"}))) {
            add("L", " ");
            cur += 2;
            break;
          }
          cur += 2;
        } else {
          cur += 1;
        }
        add("L");
        break;
      case 'M':
        // "dumb", "thumb"
        if ((string_at(cur - 1, {"UMB"}) && (cur + 1 == last_ || string_at(cur + 2, {"ER"}))) ||
            at(cur + 1) == 'M') {
          cur += 2;
        } else {
          cur += 1;
        }
        add("M");
        break;
      case 'N':
        cur += at(cur + 1) == 'N' ? 2 : 1;
        add("N");
        break;
      case 'P':
        if (at(cur + 1) == 'H') {
          add("F");
          cur += 2;
        } else {
          cur += string_at(cur + 1, {"P", "B"}) ? 2 : 1;  // "campbell"
          add("P");
        }
        break;
      case 'Q':
        cur += at(cur + 1) == 'Q' ? 2 : 1;
        add("K");
        break;
      case 'R':
        // French, as in "rogier" but not "hochmeier"
        if (cur == last_ && !slavo_germanic_ && string_at(cur - 2, {"IE"}) &&
            !string_at(cur - 4, {"ME", "MA"})) {
          add("", "R");
        } else {
          add("R");
        }
        cur += at(cur + 1) == 'R' ? 2 : 1;
        break;
      case 'S':
        cur = encode_s(cur);
        break;
      case 'T':
        if (string_at(cur, {"TION"})) {
          add("X");
          cur += 3;
        } else if (string_at(cur, {"TIA", "TCH"})) {
          add("X");
          cur += 3;
        } else if (string_at(cur, {"TH"}) || string_at(cur, {"TTH"})) {
          // "thomas", "thames", or germanic
          if (string_at(cur + 2, {"OM", "AM"}) || germanic_prefix()) {
            add("T");
          } else {
            add("0", "T");
          }
          cur += 2;
        } else {
          cur += string_at(cur + 1, {"T", "D"}) ? 2 : 1;
          add("T");
        }
        break;
      case 'V':
        cur += at(cur + 1) == 'V' ? 2 : 1;
        add("F");
        break;
      case 'W':
        cur = encode_w(cur);
        break;
      case 'X':
        // French, as in "breaux"
        if (!(cur == last_ && (string_at(cur - 3, {"IAU", "EAU"}) || string_at(cur - 2, {"AU", "OU"})))) {
          add("KS");
        }
        cur += string_at(cur + 1, {"C", "X"}) ? 2 : 1;
        break;
      case 'Z':
        if (at(cur + 1) == 'H') {
          add("J");  // pinyin, as in "zhao"
          cur += 2;
          break;
        }
        if (string_at(cur + 1, {"ZO", "ZI", "ZA"}) || (slavo_germanic_ && cur > 0 && at(cur - 1) != 'T')) {
          add("S", "TS");
        } else {
          add("S");
        }
        cur += at(cur + 1) == 'Z' ? 2 : 1;
        break;
      default:
        cur += 1;
        break;
    }
  }

  if (primary_.size() > kMaxCodeLength) primary_.resize(kMaxCodeLength);
  if (secondary_.size() > kMaxCodeLength) secondary_.resize(kMaxCodeLength);
  return {primary_, secondary_};
}

}  // namespace

PhoneticCode double_metaphone(std::string_view name) {
  const std::string letters = detail::require_letters(name);
  auto [primary, secondary] = DoubleMetaphoneEncoder(letters).run();
  // Words built only from silent letters ("hhh") code to nothing; keep the
  // non-empty invariant by falling back to the first letter.
  if (primary.empty()) primary = std::string(1, letters[0]);
  if (secondary.empty()) secondary = primary;
  return {Algorithm::DoubleMetaphone, primary, secondary};
}

}  // namespace namesound::phonetics
