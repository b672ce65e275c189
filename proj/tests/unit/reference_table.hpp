#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

// Rows of tests/data/phonetic_reference.tsv, produced by
// tests/oracles/phonetic_reference.py from independent implementations.
struct ReferenceRow {
  std::string name;
  std::map<std::string, std::string> codes;  // column -> code
};

inline std::vector<ReferenceRow> load_reference_table(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> columns;
  {
    std::istringstream header(line);
    for (std::string c; std::getline(header, c, '\t');) columns.push_back(c);
  }
  std::vector<ReferenceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    ReferenceRow row;
    std::string value;
    for (std::size_t i = 0; std::getline(fields, value, '\t'); ++i) {
      if (i == 0) row.name = value;
      else if (i < columns.size()) row.codes[columns[i]] = value;
    }
    rows.push_back(row);
  }
  return rows;
}

/// Known rule-variant differences from the reference oracle, keyed by
/// (column, name). Each maps to this library's code.
inline const std::map<std::pair<std::string, std::string>, std::string>& documented_variants() {
  // Leading doubled vowels: the reference drops a word-initial vowel that
  // is not the first letter of its run ("aaron" -> "RN"); this library
  // keeps it.
  static const std::map<std::pair<std::string, std::string>, std::string> v = {
      {{"metaphone", "aaron"}, "ARN"},
  };
  return v;
}
