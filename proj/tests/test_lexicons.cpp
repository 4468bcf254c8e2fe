#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "termrank/lexicons.hpp"

using namespace termrank;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path path = fs::temp_directory_path() / ("termrank_lex_" + name);
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("lexicon loads entries and normalizes keys") {
  const auto path = write_temp("ok.tsv",
                               "term\tfamiliarity\tsemantic_types\n"
                               "Creatinine\t0.45\tT059,T123\n"
                               "plain term\t0.9\t\n");
  const Lexicon lexicon = Lexicon::load(path);
  REQUIRE(lexicon.size() == 2);
  const LexiconEntry* entry = lexicon.find("creatinine");
  REQUIRE(entry != nullptr);
  CHECK(entry->familiarity == doctest::Approx(0.45));
  CHECK(entry->semantic_types == std::set<std::string>{"T059", "T123"});
  CHECK(lexicon.find("plain term")->semantic_types.empty());
  CHECK(lexicon.type_codes() == std::vector<std::string>{"T059", "T123"});
}

TEST_CASE("lexicon rejects bad headers, ranges and duplicates") {
  CHECK_THROWS_WITH_AS(
      Lexicon::load(write_temp("hdr.tsv", "term\tfamiliarity\nfoo\t0.5\n")),
      doctest::Contains("missing column"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      Lexicon::load(write_temp("range.tsv",
                               "term\tfamiliarity\tsemantic_types\nfoo\t1.2\t\n")),
      doctest::Contains("familiarity"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      Lexicon::load(write_temp("dup.tsv",
                               "term\tfamiliarity\tsemantic_types\nFoo\t0.5\t\nfoo\t0.4\t\n")),
      doctest::Contains("duplicate"), std::runtime_error);
}

TEST_CASE("is_jargon is inclusive at the threshold") {
  const Lexicon lexicon({{"stent", 0.6, {}}, {"ache", 0.61, {}}});
  CHECK(lexicon.is_jargon("stent"));
  CHECK_FALSE(lexicon.is_jargon("ache"));
  CHECK_FALSE(lexicon.is_jargon("absent"));
}

TEST_CASE("is_jargon is monotone in the threshold") {
  const Lexicon lexicon({{"a", 0.1, {}}, {"b", 0.5, {}}, {"c", 0.9, {}}});
  const std::vector<std::string> keys = {"a", "b", "c"};
  for (double lo = 0.0; lo <= 1.0; lo += 0.25) {
    for (double hi = lo; hi <= 1.0; hi += 0.25) {
      for (const auto& key : keys) {
        if (lexicon.is_jargon(key, lo)) CHECK(lexicon.is_jargon(key, hi));
      }
    }
  }
}

TEST_CASE("semantic_types_of uses exact then head-noun matching") {
  const Lexicon lexicon({{"myocardial infarction", 0.2, {"T047"}},
                         {"lymphocytosis", 0.3, {"T047"}},
                         {"scan", 0.5, {"T060"}}});
  CHECK(lexicon.semantic_types_of("myocardial infarction") == std::set<std::string>{"T047"});
  CHECK(lexicon.semantic_types_of("reactive lymphocytosis") == std::set<std::string>{"T047"});
  CHECK(lexicon.semantic_types_of("renal duplex scan") == std::set<std::string>{"T060"});
  CHECK(lexicon.semantic_types_of("unknown phrase").empty());
  // single unknown word has no head to back off to beyond itself
  CHECK(lexicon.semantic_types_of("unknown").empty());
}

TEST_CASE("embedding table round-trips the documented text format") {
  const auto path = write_temp("emb.txt", "2 3\na 1 0 0\nb 0 1 0.5\n");
  const EmbeddingTable table = EmbeddingTable::load(path);
  CHECK(table.dim == 3);
  REQUIRE(table.find("b") != nullptr);
  CHECK((*table.find("b"))[2] == doctest::Approx(0.5));
  CHECK(table.find("missing") == nullptr);
}

TEST_CASE("embedding table rejects malformed files") {
  CHECK_THROWS_WITH_AS(EmbeddingTable::load(write_temp("dim.txt", "1 3\na 1 0 0 9\n")),
                       doctest::Contains("dimension"), std::runtime_error);
  CHECK_THROWS_WITH_AS(EmbeddingTable::load(write_temp("count.txt", "5 2\na 1 0\nb 0 1\n")),
                       doctest::Contains("header says 5"), std::runtime_error);
  CHECK_THROWS(EmbeddingTable::load(write_temp("nan.txt", "1 2\na 1 zz\n")));
  CHECK_THROWS(EmbeddingTable::load(write_temp("hdr.txt", "oops\n")));
}

TEST_CASE("stopword and term-set loaders normalize entries") {
  const auto path = write_temp("stop.txt", "The\n\n  Of \nand\n");
  const StopwordSet stopwords = load_stopwords(path);
  CHECK(stopwords == StopwordSet{"the", "of", "and"});
  const auto terms = load_term_set(path);
  CHECK(terms.count("the") == 1);
  CHECK(terms.size() == 3);
}
