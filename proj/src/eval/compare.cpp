#include <cstdio>
#include <optional>

#include "namesound/error.hpp"
#include "namesound/eval.hpp"

namespace namesound::eval {
namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::vector<Name> candidates_of(const std::vector<engine::Suggestion>& suggestions) {
  std::vector<Name> out;
  out.reserve(suggestions.size());
  for (const auto& s : suggestions) out.push_back(s.candidate);
  return out;
}

}  // namespace

MethodSpec phonetic_or_string_method(std::string_view tag, std::size_t k_out) {
  MethodSpec m;
  m.config.k_out = k_out;
  m.label = std::string(tag);
  if (auto algo = phonetics::parse_algorithm(tag)) {
    m.kind = MethodSpec::Kind::Phonetic;
    m.algorithm = *algo;
  } else if (auto metric = stringdist::parse_metric(tag)) {
    m.kind = MethodSpec::Kind::String;
    m.metric = *metric;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(tag) + "'");
  }
  return m;
}

MethodSpec spoken_method(std::shared_ptr<const embed::EmbeddingSet> embeddings, engine::SuggestConfig config) {
  if (!embeddings) throw Error(ErrorKind::InvalidArgument, "spoken method needs an embedding set");
  MethodSpec m;
  m.kind = MethodSpec::Kind::Spoken;
  m.config = config;
  m.label = "spoken-" + std::string(embed::to_string(embeddings->backend)) + "-" + embeddings->language;
  if (!embeddings->accent.empty()) m.label += "-" + embeddings->accent;
  m.embeddings = std::move(embeddings);
  return m;
}

RunResult run_method(const MethodSpec& method, const NameCorpus& corpus, const SynonymTruth& truth,
                     std::size_t threads) {
  method.config.validate();
  std::vector<Name> queries;
  queries.reserve(truth.size());
  for (const auto& [query, _] : truth.entries()) queries.push_back(query);

  std::vector<std::vector<Name>> lists(queries.size());
  switch (method.kind) {
    case MethodSpec::Kind::Spoken: {
      const auto& set = *method.embeddings;
      std::vector<embed::Embedding> searchable;
      for (const auto& e : set.embeddings) {
        if (corpus.contains(e.name().normalized())) searchable.push_back(e);
      }
      if (searchable.empty()) {
        throw Error(ErrorKind::EmptyIndex, "no embeddings for any corpus name in " + method.label);
      }
      std::vector<const embed::Embedding*> query_embeddings(queries.size());
      for (std::size_t i = 0; i < queries.size(); ++i) {
        query_embeddings[i] = set.find(queries[i].normalized());
        if (query_embeddings[i] == nullptr) {
          throw Error(ErrorKind::MissingEmbedding,
                      "no " + method.label + " embedding for query '" + queries[i].normalized() + "'");
        }
      }
      const engine::VectorIndex index = engine::build_index(searchable);
      engine::parallel_for(queries.size(), threads, [&](std::size_t i) {
        lists[i] = candidates_of(engine::suggest_spoken(queries[i], index, *query_embeddings[i], method.config));
      });
      break;
    }
    case MethodSpec::Kind::Phonetic: {
      const engine::PhoneticIndex index(corpus, method.algorithm);
      engine::parallel_for(queries.size(), threads, [&](std::size_t i) {
        lists[i] = candidates_of(engine::suggest_phonetic(queries[i], index, method.config.k_out));
      });
      break;
    }
    case MethodSpec::Kind::String:
      engine::parallel_for(queries.size(), threads, [&](std::size_t i) {
        lists[i] = candidates_of(engine::suggest_string(queries[i], corpus, method.metric, method.config.k_out));
      });
      break;
  }

  RunResult run;
  for (std::size_t i = 0; i < queries.size(); ++i) run.add(queries[i], std::move(lists[i]));
  return run;
}

ComparisonTable compare_methods(const NameCorpus& corpus, const SynonymTruth& truth,
                                std::span<const MethodSpec> methods, std::size_t threads) {
  ComparisonTable table;
  for (const auto& m : methods) {
    MethodRow row;
    row.label = m.label;
    row.per_query = evaluate_run_per_query(run_method(m, corpus, truth, threads), truth);
    row.report = aggregate(row.per_query);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_table_tsv(const ComparisonTable& table) {
  std::string out = "method\tn_queries\tAccuracy\tF1\tAP@1\tAP@2\tAP@3\tAP@5\tAP@10\tRecall\n";
  for (const auto& row : table.rows) {
    const auto& r = row.report;
    out += row.label + '\t' + std::to_string(r.n_queries) + '\t' + fixed4(r.accuracy) + '\t' + fixed4(r.f1);
    for (double p : r.precision_at) out += '\t' + fixed4(p);
    out += '\t' + fixed4(r.recall) + '\n';
  }
  return out;
}

std::string format_per_query_csv(const ComparisonTable& table) {
  std::string out = "method,query,returned,hits,p@1,p@2,p@3,p@5,p@10,precision,recall,f1\n";
  auto quoted = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  };
  for (const auto& row : table.rows) {
    for (const auto& q : row.per_query) {
      out += quoted(row.label) + ',' + quoted(q.query.normalized()) + ',' + std::to_string(q.returned) + ',' +
             std::to_string(q.hits);
      for (double p : q.precision_at) out += ',' + fixed4(p);
      out += ',' + fixed4(q.precision) + ',' + fixed4(q.recall) + ',' + fixed4(q.f1) + '\n';
    }
  }
  return out;
}

}  // namespace namesound::eval
