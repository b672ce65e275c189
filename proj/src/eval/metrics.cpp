#include <algorithm>
#include <charconv>

#include "namesound/error.hpp"
#include "namesound/eval.hpp"
#include "namesound/unicode.hpp"

namespace namesound::eval {

double precision_at_k(std::span<const Name> suggestions, const std::set<Name>& truth, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "precision@k needs k >= 1");
  const std::size_t n = std::min(k, suggestions.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += truth.contains(suggestions[i]);
  return static_cast<double>(hits) / static_cast<double>(k);
}

double recall(std::span<const Name> suggestions, const std::set<Name>& truth) {
  if (truth.empty()) throw Error(ErrorKind::EmptyTruth, "recall needs at least one true synonym");
  std::set<Name> found;
  for (const auto& s : suggestions) {
    if (truth.contains(s)) found.insert(s);
  }
  return static_cast<double>(found.size()) / static_cast<double>(truth.size());
}

void RunResult::add(Name query, std::vector<Name> suggestions) {
  std::set<Name> seen;
  for (const auto& s : suggestions) {
    if (s == query) {
      throw Error(ErrorKind::InvalidArgument, "suggestions for '" + query.normalized() + "' contain the query");
    }
    if (!seen.insert(s).second) {
      throw Error(ErrorKind::InvalidArgument,
                  "suggestions for '" + query.normalized() + "' repeat '" + s.normalized() + "'");
    }
  }
  const std::string key = query.normalized();
  if (!entries_.emplace(std::move(query), std::move(suggestions)).second) {
    throw Error(ErrorKind::InvalidArgument, "query '" + key + "' appears twice in the run");
  }
}

RunResult parse_run(std::string_view text) {
  std::map<Name, std::vector<std::pair<std::size_t, Name>>, NameLess> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (unicode::trim(line).empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";

    std::vector<std::string_view> fields;
    for (std::size_t start = 0;;) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3) throw Error(ErrorKind::MalformedRow, where + "expected query<TAB>rank<TAB>candidate");
    std::size_t rank = 0;
    const auto rank_text = unicode::trim(fields[1]);
    const auto res = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
    if (res.ec != std::errc{} || res.ptr != rank_text.data() + rank_text.size() || rank == 0) {
      throw Error(ErrorKind::MalformedRow, where + "rank must be a positive integer");
    }
    Name query = Name::parse_lenient(fields[0]);
    Name candidate = Name::parse_lenient(fields[2]);
    rows[std::move(query)].emplace_back(rank, std::move(candidate));
  }

  RunResult run;
  for (auto& [query, ranked] : rows) {
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Name> list;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (ranked[i].first != i + 1) {
        throw Error(ErrorKind::MalformedRow,
                    "ranks for '" + query.normalized() + "' are not consecutive from 1");
      }
      list.push_back(std::move(ranked[i].second));
    }
    run.add(query, std::move(list));
  }
  return run;
}

RunResult load_run(const std::filesystem::path& path) { return parse_run(read_text_file(path)); }

QueryMetrics evaluate_query(const Name& query, std::span<const Name> suggestions, const std::set<Name>& truth) {
  QueryMetrics m{query};
  m.returned = suggestions.size();
  for (const auto& s : suggestions) m.hits += truth.contains(s);
  for (std::size_t i = 0; i < kPrecisionCutoffs.size(); ++i) {
    m.precision_at[i] = precision_at_k(suggestions, truth, kPrecisionCutoffs[i]);
  }
  m.precision = m.returned == 0 ? 0.0 : static_cast<double>(m.hits) / static_cast<double>(m.returned);
  m.recall = recall(suggestions, truth);
  m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

double MetricsReport::precision(std::size_t k) const {
  for (std::size_t i = 0; i < kPrecisionCutoffs.size(); ++i) {
    if (kPrecisionCutoffs[i] == k) return precision_at[i];
  }
  throw Error(ErrorKind::InvalidArgument, "precision is reported at k = 1, 2, 3, 5, 10 only");
}

MetricsReport aggregate(std::span<const QueryMetrics> per_query) {
  if (per_query.empty()) throw Error(ErrorKind::EmptyRun, "no queries to aggregate");
  MetricsReport r;
  r.n_queries = per_query.size();
  for (const auto& q : per_query) {
    r.f1 += q.f1;
    r.recall += q.recall;
    for (std::size_t i = 0; i < kPrecisionCutoffs.size(); ++i) r.precision_at[i] += q.precision_at[i];
  }
  const double n = static_cast<double>(per_query.size());
  r.f1 /= n;
  r.recall /= n;
  for (double& p : r.precision_at) p /= n;
  r.accuracy = r.precision(10);
  return r;
}

std::vector<QueryMetrics> evaluate_run_per_query(const RunResult& run, const SynonymTruth& truth) {
  if (run.size() == 0) throw Error(ErrorKind::EmptyRun, "run has no queries");
  std::vector<QueryMetrics> out;
  out.reserve(run.size());
  for (const auto& [query, suggestions] : run.entries()) {
    const auto* expected = truth.find(query.normalized());
    if (expected == nullptr) throw Error(ErrorKind::MissingTruth, "no ground truth for '" + query.normalized() + "'");
    out.push_back(evaluate_query(query, suggestions, *expected));
  }
  return out;
}

MetricsReport evaluate_run(const RunResult& run, const SynonymTruth& truth) {
  return aggregate(evaluate_run_per_query(run, truth));
}

}  // namespace namesound::eval
