#include "namesound/stringdist.hpp"

#include <algorithm>
#include <numeric>

#include "namesound/unicode.hpp"

namespace namesound::stringdist {

namespace {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t osa(std::u32string_view a, std::u32string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // Three rolling rows: i-2, i-1, i.
  std::vector<std::size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        cur[j] = std::min(cur[j], prev2[j - 2] + 1);
      }
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

double jaro(std::u32string_view a, std::u32string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const std::size_t longest = std::max(a.size(), b.size());
  const std::size_t window = longest / 2 > 0 ? longest / 2 - 1 : 0;

  std::vector<bool> a_matched(a.size(), false), b_matched(b.size(), false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(b.size() - 1, i + window);
    for (std::size_t j = lo; j <= hi && j < b.size(); ++j) {
      if (!b_matched[j] && a[i] == b[j]) {
        a_matched[i] = b_matched[j] = true;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;

  std::size_t half_transpositions = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a_matched[i]) continue;
    while (!b_matched[k]) ++k;
    if (a[i] != b[k]) ++half_transpositions;
    ++k;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions / 2);
  return (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) + (m - t) / m) / 3.0;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  return levenshtein(unicode::decode_utf8(a), unicode::decode_utf8(b));
}

std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
  return osa(unicode::decode_utf8(a), unicode::decode_utf8(b));
}

double jaro_winkler_similarity(std::string_view a, std::string_view b) {
  const std::u32string ua = unicode::decode_utf8(a);
  const std::u32string ub = unicode::decode_utf8(b);
  const double j = jaro(ua, ub);
  std::size_t prefix = 0;
  while (prefix < 4 && prefix < ua.size() && prefix < ub.size() && ua[prefix] == ub[prefix]) ++prefix;
  const double sim = j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
  return std::clamp(sim, 0.0, 1.0);
}

std::optional<Metric> parse_metric(std::string_view tag) {
  if (tag == "edit") return Metric::Edit;
  if (tag == "dl") return Metric::DamerauLevenshtein;
  if (tag == "jw") return Metric::JaroWinkler;
  return std::nullopt;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::Edit: return "edit";
    case Metric::DamerauLevenshtein: return "dl";
    case Metric::JaroWinkler: return "jw";
  }
  return "unknown";
}

std::optional<OrderingKey> parse_ordering(std::string_view tag) {
  if (tag == "edit") return OrderingKey::EditAscending;
  if (tag == "dl") return OrderingKey::DamerauAscending;
  return std::nullopt;
}

std::size_t OrderingFunction::score(std::string_view query, std::string_view candidate) const {
  return key == OrderingKey::DamerauAscending ? damerau_levenshtein(query, candidate)
                                               : edit_distance(query, candidate);
}

std::vector<Name> order_candidates(const Name& query, std::vector<Name> candidates, OrderingFunction f) {
  std::vector<std::pair<std::size_t, Name>> keyed;
  keyed.reserve(candidates.size());
  for (auto& c : candidates) {
    const std::size_t s = f.score(query.normalized(), c.normalized());
    keyed.emplace_back(s, std::move(c));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
  std::vector<Name> out;
  out.reserve(keyed.size());
  for (auto& [s, n] : keyed) out.push_back(std::move(n));
  return out;
}

}  // namespace namesound::stringdist
