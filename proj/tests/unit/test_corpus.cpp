#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "namesound/corpus.hpp"
#include "namesound/error.hpp"
#include "namesound/unicode.hpp"

using namespace namesound;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("normalize_name folds case and trims") {
    CHECK(normalize_name("Robert").normalized() == "robert");
    CHECK(normalize_name("  Anna ").normalized() == "anna");
    CHECK(normalize_name("  Anna ").raw() == "  Anna ");
    CHECK(normalize_name("ÉLODIE").normalized() == "élodie");
    // Case folding maps final sigma to sigma.
    CHECK(normalize_name("Ἀλέξανδρος").normalized() == "ἀλέξανδροσ");
    CHECK(normalize_name("ДМИТРИЙ").normalized() == "дмитрий");
  }

  TEST_CASE("normalize_name length rules") {
    CHECK(kind_of([] { normalize_name("Ed"); }) == ErrorKind::TooShort);
    CHECK(kind_of([] { normalize_name("   "); }) == ErrorKind::Empty);
    CHECK(kind_of([] { normalize_name(""); }) == ErrorKind::Empty);
    // Three code points, more bytes.
    CHECK(normalize_name("Zoë").normalized() == "zoë");
    CHECK(Name::parse_lenient("Ed").normalized() == "ed");
  }

  TEST_CASE("normalize_name is idempotent") {
    for (const char* raw : {"Robert", " MARY-ANN ", "Élise", "o'neil", "\xC2\xA0Jo\xC2\xA0hn "}) {
      const Name once = normalize_name(raw);
      CHECK(normalize_name(once.normalized()).normalized() == once.normalized());
    }
  }

  TEST_CASE("malformed utf-8 is replaced, not rejected") {
    const std::string bad = "ab\xFF" "c";
    CHECK(unicode::decode_utf8(bad) == std::u32string{U'a', U'b', U'�', U'c'});
    CHECK(unicode::code_point_count("ab\xE2\x82") == 3);
  }

  TEST_CASE("parse_corpus dedups after normalization") {
    const NameCorpus c = parse_corpus("Robert\nrobert\nAnna\n", "t");
    REQUIRE(c.size() == 2);
    CHECK(c.names()[0].normalized() == "anna");
    CHECK(c.names()[1].normalized() == "robert");
    CHECK(c.summary().duplicates == 1);
    CHECK(c.contains("robert"));
    CHECK_FALSE(c.contains("rob"));
  }

  TEST_CASE("parse_corpus reports rejected lines") {
    const NameCorpus c = parse_corpus("Ed\nEddie\n", "t");
    CHECK(c.size() == 1);
    REQUIRE(c.summary().rejected.size() == 1);
    CHECK(c.summary().rejected[0].line == 1);
    CHECK(c.summary().rejected[0].reason == "TooShort");
  }

  TEST_CASE("parse_corpus skips comments, blanks and a BOM") {
    const NameCorpus c = parse_corpus("\xEF\xBB\xBFMary\n# comment\n\n  \r\nJohn\r\n", "t");
    CHECK(c.size() == 2);
    CHECK(c.summary().rejected.empty());
  }

  TEST_CASE("empty corpus is an error") {
    CHECK(kind_of([] { parse_corpus("", "t"); }) == ErrorKind::EmptyCorpus);
    CHECK(kind_of([] { parse_corpus("# only\nEd\n", "t"); }) == ErrorKind::EmptyCorpus);
  }

  TEST_CASE("load_corpus is order-insensitive") {
    std::vector<std::string> lines = {"Robert", "anna", "Zoë", "ED", "mary", "MARY", "john", "# x", "", "peter"};
    std::string base;
    for (auto& l : lines) base += l + "\n";
    const NameCorpus reference = parse_corpus(base, "t");
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(lines.begin(), lines.end(), rng);
      std::string text;
      for (auto& l : lines) text += l + "\n";
      CHECK(parse_corpus(text, "t").names() == reference.names());
    }
  }

  TEST_CASE("load_corpus from disk and IoError") {
    testing::TempDir dir;
    testing::write_text(dir.path() / "c.txt", "Robert\nrobert\nAnna\n");
    CHECK(load_corpus(dir.path() / "c.txt").size() == 2);
    CHECK(kind_of([&] { load_corpus(dir.path() / "missing.txt"); }) == ErrorKind::IoError);
  }

  TEST_CASE("ground truth merges keys without the length rule") {
    const SynonymTruth t = parse_ground_truth("name,synonym\ned,eddie\nEd,edgar\ned,eddie\n");
    REQUIRE(t.size() == 1);
    const auto* s = t.find("ed");
    REQUIRE(s != nullptr);
    CHECK(s->size() == 2);
    CHECK(s->contains(normalize_name("eddie")));
    CHECK(s->contains(normalize_name("edgar")));
    CHECK(t.summary().duplicate_pairs == 1);
  }

  TEST_CASE("ground truth drops self pairs") {
    const SynonymTruth t = parse_ground_truth("anna,anna\nanna,ann\n");
    const auto* s = t.find("anna");
    REQUIRE(s != nullptr);
    CHECK(s->size() == 1);
    CHECK(!s->contains(normalize_name("anna")));
    CHECK(t.summary().self_pairs == 1);
    CHECK(parse_ground_truth("anna,anna\n").size() == 0);
  }

  TEST_CASE("malformed truth rows name the line") {
    try {
      parse_ground_truth("name,synonym\nanna,ann\nanna\n");
      FAIL("expected MalformedRow");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedRow);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK(kind_of([] { parse_ground_truth("a,b,c\n"); }) == ErrorKind::MalformedRow);
    CHECK(kind_of([] { parse_ground_truth("anna,\n"); }) == ErrorKind::MalformedRow);
  }

  TEST_CASE("quoted csv fields") {
    CHECK(split_csv_line(R"("smith, jr",b)") == std::vector<std::string>{"smith, jr", "b"});
    CHECK(split_csv_line(R"("say ""hi""",x)") == std::vector<std::string>{R"(say "hi")", "x"});
  }

  TEST_CASE("truth keys never map to themselves") {
    const SynonymTruth t = parse_ground_truth("a1a,a1a\nbob,rob\nrob,bob\nrob,rob\nBOB,Bob\n");
    for (const auto& [k, v] : t.entries()) CHECK_FALSE(v.contains(k));
  }
}
