#include "namesound/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

#include "namesound/audio.hpp"
#include "namesound/corpus.hpp"
#include "namesound/embed.hpp"
#include "namesound/engine.hpp"
#include "namesound/eval.hpp"
#include "namesound/phonetics.hpp"
#include "namesound/speech.hpp"
#include "namesound/stringdist.hpp"

namespace namesound::cli {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BackendUnavailable:
    case ErrorKind::SynthesisFailed:
      return kExitBackend;
    case ErrorKind::InvalidArgument:
      return kExitUsage;
    default:
      return kExitData;
  }
}

namespace {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  f << text;
  if (!f.flush()) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

struct EncodeArgs {
  std::string algo;
  std::string name;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  const auto algo = phonetics::parse_algorithm(a.algo);
  if (!algo) throw Error(ErrorKind::InvalidArgument, "unknown algorithm '" + a.algo + "'");
  const auto code = phonetics::encode(*algo, Name::parse_lenient(a.name).normalized());
  out << code.primary << '\n';
  if (code.secondary) out << *code.secondary << '\n';
  return kExitOk;
}

struct DistanceArgs {
  std::string metric;
  std::string a;
  std::string b;
};

int cmd_distance(const DistanceArgs& a, std::ostream& out) {
  const auto metric = stringdist::parse_metric(a.metric);
  if (!metric) throw Error(ErrorKind::InvalidArgument, "unknown metric '" + a.metric + "'");
  const std::string x = Name::parse_lenient(a.a).normalized();
  const std::string y = Name::parse_lenient(a.b).normalized();
  switch (*metric) {
    case stringdist::Metric::Edit:
      out << stringdist::edit_distance(x, y) << '\n';
      break;
    case stringdist::Metric::DamerauLevenshtein:
      out << stringdist::damerau_levenshtein(x, y) << '\n';
      break;
    case stringdist::Metric::JaroWinkler:
      out << format_double(stringdist::jaro_winkler_similarity(x, y)) << '\n';
      break;
  }
  return kExitOk;
}

struct FetchArgs {
  std::string corpus;
  std::string lang;
  std::string accent;
  std::string fixture_dir;
  std::string cache_dir;
  std::size_t jobs = 4;
};

int cmd_fetch(const FetchArgs& a, std::ostream& out, std::ostream& err) {
  const NameCorpus corpus = load_corpus(a.corpus);
  std::unique_ptr<speech::TtsBackend> backend;
  if (!a.fixture_dir.empty()) {
    backend = std::make_unique<speech::FixtureBackend>(a.fixture_dir);
  } else {
    backend = speech::backend_from_environment();
  }
  speech::AudioCache cache = a.cache_dir.empty() ? speech::AudioCache::from_environment()
                                                 : speech::AudioCache(a.cache_dir);
  std::vector<speech::SpokenNameKey> keys;
  keys.reserve(corpus.size());
  for (const auto& n : corpus) keys.emplace_back(n, a.lang, a.accent);
  const auto report = speech::fetch_all(keys, *backend, cache, std::max<std::size_t>(1, a.jobs));
  out << "cached\t" << report.cached << "\nsynthesized\t" << report.synthesized << "\nfailed\t"
      << report.failures.size() << '\n';
  for (const auto& f : report.failures) err << "fetch-tts: " << f.name << ": " << f.message << '\n';
  return report.failures.empty() ? kExitOk : kExitBackend;
}

struct EmbedArgs {
  std::string backend;
  std::string audio_dir;
  std::string out;
  std::string lang;
  std::string accent;
  std::size_t jobs = 0;
};

struct AudioSource {
  std::string name;
  fs::path path;
};

// Cache leaf directories carry a manifest; anything else is read as
// fixture-style `<name>.<lang>[.<accent>].wav` files.
std::vector<AudioSource> list_audio(const fs::path& dir, std::string& lang, std::string& accent) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::IoError, "not a directory: " + dir.string());
  std::vector<AudioSource> sources;
  const fs::path manifest = dir / "manifest.tsv";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    std::string header;
    std::getline(in, header);
    std::istringstream words(header);
    for (std::string w; words >> w;) {
      if (lang.empty() && w.starts_with("lang=")) lang = w.substr(5);
      if (accent.empty() && w.starts_with("accent=")) accent = w.substr(7);
    }
    if (accent == "default") accent.clear();
    for (auto& [hash, name] : speech::read_manifest(dir)) sources.push_back({name, dir / (hash + ".wav")});
    if (lang.empty()) throw Error(ErrorKind::MalformedRow, "manifest lacks a language; pass --lang");
    return sources;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, std::pair<fs::path, bool>> chosen;  // name -> (path, exact accent)
  for (const auto& p : files) {
    const std::string stem = p.stem().string();
    std::vector<std::string> parts;
    for (std::size_t start = 0;;) {
      const auto dot = stem.find('.', start);
      parts.push_back(stem.substr(start, dot - start));
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) continue;
    if (lang.empty()) lang = parts[1];
    if (parts[1] != lang) continue;
    const bool has_accent = parts.size() == 3;
    if (has_accent && parts[2] != accent) continue;
    const std::string name = Name::parse_lenient(parts[0]).normalized();
    auto it = chosen.find(name);
    if (it == chosen.end() || (has_accent && !it->second.second)) chosen[name] = {p, has_accent};
  }
  for (auto& [name, pick] : chosen) sources.push_back({name, pick.first});
  if (sources.empty()) throw Error(ErrorKind::EmptyCorpus, "no matching .wav files in " + dir.string());
  return sources;
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  const std::string text = read_text_file(path);
  return {text.begin(), text.end()};
}

int cmd_embed(const EmbedArgs& a, std::ostream& out) {
  const embed::Backend backend = embed::parse_backend(a.backend);
  std::string lang = a.lang, accent = a.accent;
  const auto sources = list_audio(a.audio_dir, lang, accent);
  std::vector<std::optional<embed::Embedding>> results(sources.size());
  engine::parallel_for(sources.size(), a.jobs, [&](std::size_t i) {
    const AudioClip clip = decode_wav(read_bytes(sources[i].path));
    results[i] = embed::embed(backend, speech::SpokenNameKey(Name::parse_lenient(sources[i].name), lang, accent),
                              clip);
  });
  std::vector<embed::Embedding> embeddings;
  embeddings.reserve(results.size());
  for (auto& r : results) embeddings.push_back(std::move(*r));
  const auto set = embed::make_embedding_set(std::move(embeddings));
  embed::write_embeddings(fs::path(a.out), set);
  out << "embedded\t" << set.embeddings.size() << "\nbackend\t" << embed::to_string(backend) << "\ndim\t"
      << embed::dimension(backend) << '\n';
  return kExitOk;
}

struct SuggestArgs {
  std::string method;
  std::string corpus;
  std::string embeddings;
  double threshold = 1.0;
  std::size_t k = 10;
  std::size_t neighbors = 10;
  std::string name;
};

int cmd_suggest(const SuggestArgs& a, std::ostream& out) {
  const Name query = Name::parse_lenient(a.name);
  const NameCorpus corpus = load_corpus(a.corpus);
  std::vector<engine::Suggestion> suggestions;
  if (a.method == "spoken") {
    if (a.embeddings.empty()) throw Error(ErrorKind::InvalidArgument, "--method spoken needs --embeddings");
    const auto set = embed::read_embeddings(fs::path(a.embeddings));
    const auto* query_embedding = set.find(query.normalized());
    if (query_embedding == nullptr) {
      throw Error(ErrorKind::MissingEmbedding, "no embedding for '" + query.normalized() + "'");
    }
    std::vector<embed::Embedding> searchable;
    for (const auto& e : set.embeddings) {
      if (corpus.contains(e.name().normalized())) searchable.push_back(e);
    }
    if (searchable.empty()) throw Error(ErrorKind::EmptyIndex, "no embeddings for corpus names");
    engine::SuggestConfig cfg;
    cfg.k_neighbors = a.neighbors;
    cfg.k_out = a.k;
    cfg.distance_threshold = a.threshold;
    suggestions = engine::suggest_spoken(query, engine::build_index(searchable), *query_embedding, cfg);
  } else if (auto algo = phonetics::parse_algorithm(a.method)) {
    suggestions = engine::suggest_phonetic(query, corpus, *algo, a.k);
  } else if (auto metric = stringdist::parse_metric(a.method)) {
    suggestions = engine::suggest_string(query, corpus, *metric, a.k);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + a.method + "'");
  }
  out << "rank\tcandidate\tembedding_distance\tordering_score\n";
  for (const auto& s : suggestions) {
    out << s.rank << '\t' << s.candidate.normalized() << '\t'
        << (s.embedding_distance ? format_double(*s.embedding_distance) : "-") << '\t'
        << format_double(s.ordering_score) << '\n';
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string run;
  std::string truth;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto run = eval::load_run(a.run);
  const auto truth = load_ground_truth(a.truth);
  eval::ComparisonTable table;
  eval::MethodRow row;
  row.label = fs::path(a.run).stem().string();
  row.per_query = eval::evaluate_run_per_query(run, truth);
  row.report = eval::aggregate(row.per_query);
  table.rows.push_back(std::move(row));
  out << eval::format_table_tsv(table);
  return kExitOk;
}

struct CompareArgs {
  std::string corpus;
  std::string truth;
  std::vector<std::string> methods;
  std::vector<std::string> embeddings;
  double threshold = 1.0;
  std::size_t k = 10;
  std::size_t neighbors = 10;
  std::string per_query;
  std::size_t jobs = 0;
};

int cmd_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const NameCorpus corpus = load_corpus(a.corpus);
  const SynonymTruth truth = load_ground_truth(a.truth);
  std::vector<eval::MethodSpec> methods;
  for (const auto& tag : a.methods) {
    if (tag != "spoken") {
      methods.push_back(eval::phonetic_or_string_method(tag, a.k));
      continue;
    }
    if (a.embeddings.empty()) throw Error(ErrorKind::InvalidArgument, "--method spoken needs --embeddings");
    engine::SuggestConfig cfg;
    cfg.k_neighbors = a.neighbors;
    cfg.k_out = a.k;
    cfg.distance_threshold = a.threshold;
    for (const auto& path : a.embeddings) {
      auto set = std::make_shared<const embed::EmbeddingSet>(embed::read_embeddings(fs::path(path)));
      methods.push_back(eval::spoken_method(std::move(set), cfg));
    }
  }
  if (methods.empty()) err << "compare: no methods given; the table is empty\n";
  const auto table = eval::compare_methods(corpus, truth, methods, a.jobs);
  out << eval::format_table_tsv(table);
  if (!a.per_query.empty()) write_file(a.per_query, eval::format_per_query_csv(table));
  return kExitOk;
}

struct PcaArgs {
  std::string embeddings;
  std::string out;
};

int cmd_pca(const PcaArgs& a, std::ostream& out) {
  const auto set = embed::read_embeddings(fs::path(a.embeddings));
  const auto result = eval::pca_2d(set.embeddings);
  std::string csv = "name,x,y\n";
  std::array<char, 32> buf{};
  auto num = [&](double v) {
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
  };
  for (const auto& p : result.points) {
    csv += p.name.normalized() + "," + num(p.x) + "," + num(p.y) + "\n";
  }
  write_file(a.out, csv);
  out << "points\t" << result.points.size() << "\nvariance\t" << num(result.variance[0]) << '\t'
      << num(result.variance[1]) << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Suggest similar-sounding forenames and evaluate suggestion methods", "namesound"};
  app.require_subcommand(1);
  std::function<int()> action;

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Print the phonetic code(s) of a name");
  encode->add_option("--algo", enc.algo, "soundex|metaphone|dmetaphone|nysiis|mra")->required();
  encode->add_option("name", enc.name)->required();
  encode->callback([&] { action = [&] { return cmd_encode(enc, out); }; });

  DistanceArgs dist;
  auto* distance = app.add_subcommand("distance", "Print a string distance or similarity");
  distance->add_option("--metric", dist.metric, "edit|dl|jw")->required();
  distance->add_option("a", dist.a)->required();
  distance->add_option("b", dist.b)->required();
  distance->callback([&] { action = [&] { return cmd_distance(dist, out); }; });

  FetchArgs fetch;
  auto* fetch_cmd = app.add_subcommand("fetch-tts", "Synthesize and cache audio for every corpus name");
  fetch_cmd->add_option("--corpus", fetch.corpus)->required();
  fetch_cmd->add_option("--lang", fetch.lang)->required();
  fetch_cmd->add_option("--accent", fetch.accent);
  fetch_cmd->add_option("--fixture-dir", fetch.fixture_dir, "Serve WAV files from this directory");
  fetch_cmd->add_option("--cache-dir", fetch.cache_dir, "Defaults to $NAMESOUND_CACHE_DIR");
  fetch_cmd->add_option("--jobs", fetch.jobs, "Concurrent synthesis calls");
  fetch_cmd->callback([&] { action = [&] { return cmd_fetch(fetch, out, err); }; });

  EmbedArgs emb;
  auto* embed_cmd = app.add_subcommand("embed", "Extract embeddings from a directory of WAV files");
  embed_cmd->add_option("--backend", emb.backend, "mel|hand")->required();
  embed_cmd->add_option("--audio-dir", emb.audio_dir)->required();
  embed_cmd->add_option("--out", emb.out)->required();
  embed_cmd->add_option("--lang", emb.lang);
  embed_cmd->add_option("--accent", emb.accent);
  embed_cmd->add_option("--jobs", emb.jobs);
  embed_cmd->callback([&] { action = [&] { return cmd_embed(emb, out); }; });

  SuggestArgs sug;
  auto* suggest = app.add_subcommand("suggest", "Suggest similar names for one query");
  suggest->add_option("--method", sug.method, "spoken|soundex|metaphone|dmetaphone|nysiis|mra|edit|dl|jw")
      ->required();
  suggest->add_option("--corpus", sug.corpus)->required();
  suggest->add_option("--embeddings", sug.embeddings);
  suggest->add_option("--threshold", sug.threshold);
  suggest->add_option("--k", sug.k);
  suggest->add_option("--neighbors", sug.neighbors);
  suggest->add_option("name", sug.name)->required();
  suggest->callback([&] { action = [&] { return cmd_suggest(sug, out); }; });

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score a run file against ground truth");
  evaluate->add_option("--run", ev.run)->required();
  evaluate->add_option("--truth", ev.truth)->required();
  evaluate->callback([&] { action = [&] { return cmd_evaluate(ev, out); }; });

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Evaluate several methods on one corpus");
  compare->add_option("--corpus", cmp.corpus)->required();
  compare->add_option("--truth", cmp.truth)->required();
  compare->add_option("--method", cmp.methods, "Repeatable; 'spoken' uses every --embeddings file");
  compare->add_option("--embeddings", cmp.embeddings);
  compare->add_option("--threshold", cmp.threshold);
  compare->add_option("--k", cmp.k);
  compare->add_option("--neighbors", cmp.neighbors);
  compare->add_option("--per-query", cmp.per_query);
  compare->add_option("--jobs", cmp.jobs);
  compare->callback([&] { action = [&] { return cmd_compare(cmp, out, err); }; });

  PcaArgs pca;
  auto* pca_cmd = app.add_subcommand("pca", "Project embeddings to two dimensions");
  pca_cmd->add_option("--embeddings", pca.embeddings)->required();
  pca_cmd->add_option("--out", pca.out)->required();
  pca_cmd->callback([&] { action = [&] { return cmd_pca(pca, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    err << "namesound: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "namesound: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace namesound::cli
