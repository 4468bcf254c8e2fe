#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "termrank/rng.hpp"
#include "termrank/term_extract.hpp"

using namespace termrank;

namespace {

Document make_doc(const std::string& id, const std::string& text, const StopwordSet& stopwords) {
  Document doc;
  doc.id = id;
  doc.text = text;
  doc.tokens = tokenize(text, stopwords);
  return doc;
}

std::set<std::string> keys_of(const std::vector<CandidateTerm>& candidates) {
  std::set<std::string> keys;
  for (const auto& c : candidates) keys.insert(c.key);
  return keys;
}

const CandidateTerm& find_term(const std::vector<CandidateTerm>& candidates,
                               const std::string& key) {
  auto it = std::find_if(candidates.begin(), candidates.end(),
                         [&](const CandidateTerm& c) { return c.key == key; });
  REQUIRE(it != candidates.end());
  return *it;
}

}  // namespace

TEST_CASE("normalize_term lowercases, collapses whitespace, trims") {
  CHECK(normalize_term("Chronic  Kidney Disease ") == "chronic kidney disease");
  CHECK(normalize_term("ACE inhibitor") == "ace inhibitor");
  CHECK(normalize_term("") == "");
}

TEST_CASE("extract_candidates enumerates stopword-free n-grams") {
  const StopwordSet stop = {"is"};
  const auto docs = {make_doc("d1", "chronic kidney disease is permanent", stop)};
  const auto candidates = extract_candidates({docs.begin(), docs.end()}, 3, 1);
  const auto keys = keys_of(candidates);
  const std::set<std::string> expected = {
      "chronic", "kidney", "disease", "permanent",
      "chronic kidney", "kidney disease", "chronic kidney disease"};
  CHECK(keys == expected);  // nothing crosses the stopword
  CHECK(find_term(candidates, "chronic kidney disease").length == 3);
  CHECK(find_term(candidates, "kidney").tf_total == 1);
}

TEST_CASE("extract_candidates excludes numbers") {
  const auto docs = {make_doc("d1", "4.41 elevated", {})};
  const auto candidates = extract_candidates({docs.begin(), docs.end()}, 4, 1);
  CHECK(keys_of(candidates) == std::set<std::string>{"elevated"});
}

TEST_CASE("extract_candidates drops terms under min_tf") {
  const auto docs = {make_doc("d1", "alpha beta", {})};
  CHECK(extract_candidates({docs.begin(), docs.end()}, 2, 2).empty());
}

TEST_CASE("extract_candidates counts overlapping windows and per-doc frequencies") {
  const std::vector<Document> docs = {make_doc("d1", "pain pain pain", {}),
                                      make_doc("d2", "pain relief", {})};
  const auto candidates = extract_candidates(docs, 3, 1);
  const auto& pain = find_term(candidates, "pain");
  CHECK(pain.tf_total == 4);
  CHECK(pain.df == 2);
  CHECK(pain.tf_by_doc.at("d1") == 3);
  CHECK(pain.tf_by_doc.at("d2") == 1);
  CHECK(find_term(candidates, "pain pain").tf_total == 2);  // overlapping windows
  CHECK(find_term(candidates, "pain pain pain").tf_total == 1);
}

TEST_CASE("extract_candidates keeps the first-seen surface for display") {
  const std::vector<Document> docs = {make_doc("a", "ACE Inhibitor", {}),
                                      make_doc("b", "ace inhibitor", {})};
  const auto candidates = extract_candidates(docs, 2, 1);
  CHECK(find_term(candidates, "ace inhibitor").surface == "ACE Inhibitor");
}

TEST_CASE("candidate set is invariant to document order and thread count") {
  const StopwordSet stop = {"the", "of"};
  std::vector<Document> docs = {
      make_doc("n1", "renal artery stenosis of the kidney", stop),
      make_doc("n2", "kidney disease. renal artery", stop),
      make_doc("n3", "artery stenosis, renal artery stenosis", stop),
  };
  const auto base = extract_candidates(docs, 4, 1, 1);
  std::reverse(docs.begin(), docs.end());
  const auto reversed = extract_candidates(docs, 4, 1, 4);
  REQUIRE(base.size() == reversed.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(base[i].key == reversed[i].key);
    CHECK(base[i].tf_total == reversed[i].tf_total);
    CHECK(base[i].tf_by_doc == reversed[i].tf_by_doc);
  }
}

TEST_CASE("build_nesting_index finds containing parents") {
  const std::vector<Document> docs = {make_doc("d1", "pain. back pain. chest pain", {})};
  const auto candidates = extract_candidates(docs, 2, 1);
  const auto nesting = build_nesting_index(candidates);
  CHECK(nesting.parents.at("pain") == std::set<std::string>{"back pain", "chest pain"});
  CHECK(nesting.parents.at("back pain").empty());
  CHECK(nesting.is_nested("pain"));
  CHECK_FALSE(nesting.is_nested("back pain"));
}

TEST_CASE("build_nesting_index handles singletons and chains") {
  CandidateTerm solo;
  solo.key = "pain";
  solo.tokens = {"pain"};
  solo.length = 1;
  const auto nesting = build_nesting_index({solo});
  CHECK(nesting.parents.at("pain").empty());

  const std::vector<Document> docs = {
      make_doc("d1", "chronic kidney disease. kidney disease", {})};
  const auto candidates = extract_candidates(docs, 3, 1);
  const auto chain = build_nesting_index(candidates);
  CHECK(chain.parents.at("kidney disease") == std::set<std::string>{"chronic kidney disease"});
}

TEST_CASE("nesting is a strict partial order on random candidate sets") {
  Rng rng(99);
  const std::vector<std::string> vocab = {"aa", "bb", "cc", "dd"};
  for (int trial = 0; trial < 30; ++trial) {
    std::string text;
    const int len = rng.uniform_int(4, 20);
    for (int i = 0; i < len; ++i) {
      text += vocab[static_cast<std::size_t>(rng.below(vocab.size()))];
      text += rng.unit() < 0.25 ? ". " : " ";
    }
    const auto candidates = extract_candidates({make_doc("d", text, {})}, 3, 1);
    const auto nesting = build_nesting_index(candidates);
    const auto keys = keys_of(candidates);
    for (const auto& [key, parents] : nesting.parents) {
      CHECK(parents.count(key) == 0);  // irreflexive
      for (const std::string& parent : parents) {
        CHECK(keys.count(parent) == 1);  // parents are candidates
        CHECK(parent.size() > key.size());
        // transitive: parents of my parent are my parents
        for (const std::string& grand : nesting.parents.at(parent)) {
          CHECK(nesting.parents.at(key).count(grand) == 1);
        }
      }
    }
  }
}

TEST_CASE("extract_candidates validates arguments") {
  CHECK_THROWS(extract_candidates({}, 0, 1));
  CHECK_THROWS(extract_candidates({}, 1, 0));
}

TEST_CASE("candidate dump carries key, length, tf_total, df") {
  const std::vector<Document> docs = {make_doc("d1", "back pain. back pain", {})};
  const auto candidates = extract_candidates(docs, 2, 1);
  const auto path = std::filesystem::temp_directory_path() / "termrank_candidates.tsv";
  write_candidates_tsv(path, candidates);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "key\tlength\ttf_total\tdf");
  std::getline(in, line);
  CHECK(line == "back\t1\t2\t1");
  std::getline(in, line);
  CHECK(line == "back pain\t2\t2\t1");
}
