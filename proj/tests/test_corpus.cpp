#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "termrank/corpus.hpp"
#include "termrank/rng.hpp"
#include "termrank/text_util.hpp"

using namespace termrank;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("termrank_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("tokenize splits words, numbers, punctuation and stopwords") {
  const auto tokens = tokenize("Her creatinine rose.", {"her"});
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[0].normalized == "her");
  CHECK(tokens[0].cls == TokenClass::stopword);
  CHECK(tokens[1].normalized == "creatinine");
  CHECK(tokens[1].cls == TokenClass::word);
  CHECK(tokens[2].normalized == "rose");
  CHECK(tokens[2].cls == TokenClass::word);
  CHECK(tokens[3].surface == ".");
  CHECK(tokens[3].cls == TokenClass::punctuation);
}

TEST_CASE("tokenize of empty string is empty") { CHECK(tokenize("", {}).empty()); }

TEST_CASE("tokenize splits decimals into number/punct/number") {
  const auto tokens = tokenize("4.41", {});
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].surface == "4");
  CHECK(tokens[0].cls == TokenClass::number);
  CHECK(tokens[1].surface == ".");
  CHECK(tokens[1].cls == TokenClass::punctuation);
  CHECK(tokens[2].surface == "41");
  CHECK(tokens[2].cls == TokenClass::number);
}

TEST_CASE("tokenize splits alphanumeric boundaries") {
  const auto tokens = tokenize("b12 Chem-8", {});
  REQUIRE(tokens.size() == 5);
  CHECK(tokens[0].normalized == "b");
  CHECK(tokens[1].normalized == "12");
  CHECK(tokens[2].normalized == "chem");
  CHECK(tokens[3].surface == "-");
  CHECK(tokens[4].surface == "8");
}

TEST_CASE("tokenize properties on random ascii soup") {
  Rng rng(2024);
  const std::string alphabet = "ab C.,9 \t\nZ-x4!";
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    const int len = rng.uniform_int(0, 60);
    for (int i = 0; i < len; ++i) {
      text += alphabet[static_cast<std::size_t>(rng.below(alphabet.size()))];
    }
    const auto tokens = tokenize(text, {"ab"});
    const auto again = tokenize(text, {"ab"});
    REQUIRE(tokens.size() == again.size());  // deterministic

    std::size_t prev_end = 0;
    std::string rebuilt;
    std::size_t cursor = 0;
    for (const Token& tok : tokens) {
      CHECK(tok.begin < tok.end);
      CHECK(tok.begin >= prev_end);  // non-overlapping, increasing
      CHECK(tok.surface == text.substr(tok.begin, tok.end - tok.begin));
      CHECK(tok.normalized == to_lower_ascii(tok.surface));
      // inter-token gaps are pure whitespace, so gaps + surfaces rebuild text
      rebuilt += text.substr(cursor, tok.begin - cursor);
      rebuilt += tok.surface;
      cursor = tok.end;
      prev_end = tok.end;
    }
    rebuilt += text.substr(cursor);
    CHECK(rebuilt == text);
    for (std::size_t i = 0; i < text.size(); ++i) {
      const bool inside_token = [&] {
        for (const Token& tok : tokens) {
          if (i >= tok.begin && i < tok.end) return true;
        }
        return false;
      }();
      if (!inside_token) CHECK(std::isspace(static_cast<unsigned char>(text[i])));
    }
  }
}

TEST_CASE("load_corpus reads a txt directory sorted by id") {
  const fs::path dir = make_temp_dir("txtdir");
  write_file(dir / "b.txt", "y");
  write_file(dir / "a.txt", "x");
  write_file(dir / "ignore.dat", "nope");
  const auto docs = load_corpus(dir, CorpusFormat::txt_dir, {});
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id == "a");
  CHECK(docs[1].id == "b");
  CHECK(docs[0].tokens.size() == 1);
}

TEST_CASE("load_corpus on an empty directory yields an empty corpus") {
  const fs::path dir = make_temp_dir("empty");
  CHECK(load_corpus(dir, CorpusFormat::txt_dir, {}).empty());
}

TEST_CASE("load_corpus rejects unreadable paths") {
  CHECK_THROWS(load_corpus("/no/such/place", CorpusFormat::txt_dir, {}));
  CHECK_THROWS(load_corpus("/no/such/file.jsonl", CorpusFormat::jsonl, {}));
}

TEST_CASE("load_corpus keeps empty files as zero-token documents") {
  const fs::path dir = make_temp_dir("emptydoc");
  write_file(dir / "empty.txt", "");
  const auto docs = load_corpus(dir, CorpusFormat::txt_dir, {});
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].tokens.empty());
}

TEST_CASE("load_corpus parses jsonl and flags duplicates and bad lines") {
  const fs::path dir = make_temp_dir("jsonl");
  const fs::path good = dir / "good.jsonl";
  write_file(good, "{\"id\":\"n2\",\"text\":\"beta\"}\n{\"id\":\"n1\",\"text\":\"alpha\"}\n");
  const auto docs = load_corpus(good, CorpusFormat::jsonl, {});
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id == "n1");
  CHECK(docs[0].text == "alpha");

  const fs::path dup = dir / "dup.jsonl";
  write_file(dup, "{\"id\":\"n1\",\"text\":\"a\"}\n{\"id\":\"n1\",\"text\":\"b\"}\n");
  CHECK_THROWS_WITH_AS(load_corpus(dup, CorpusFormat::jsonl, {}),
                       doctest::Contains("duplicate document id"), std::runtime_error);

  const fs::path bad = dir / "bad.jsonl";
  write_file(bad, "{\"id\":\"n1\",\"text\":\"a\"}\nnot json\n");
  CHECK_THROWS_WITH_AS(load_corpus(bad, CorpusFormat::jsonl, {}), doctest::Contains("line 2"),
                       std::runtime_error);
}
