#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "termrank/features.hpp"
#include "termrank/text_util.hpp"
#include "termrank/rng.hpp"

using namespace termrank;

namespace {

CandidateTerm make_term(const std::string& key) {
  CandidateTerm term;
  term.key = key;
  term.tokens = split(key, ' ');
  term.length = static_cast<int>(term.tokens.size());
  term.tf_by_doc = {{"d1", 1}};
  term.tf_total = 1;
  term.df = 1;
  return term;
}

EmbeddingTable two_dim_table() {
  EmbeddingTable table;
  table.dim = 2;
  table.vectors = {{"w1", {0.2, 0.4}}, {"w2", {0.6, 0.0}}};
  return table;
}

}  // namespace

TEST_CASE("term_embedding averages in-vocabulary tokens") {
  const EmbeddingTable table = two_dim_table();
  auto [mean, oov] = term_embedding(make_term("w1 w2"), table);
  CHECK_FALSE(oov);
  CHECK(mean[0] == doctest::Approx(0.4));
  CHECK(mean[1] == doctest::Approx(0.2));

  auto [single, single_oov] = term_embedding(make_term("w1"), table);
  CHECK_FALSE(single_oov);
  CHECK(single == std::vector<double>{0.2, 0.4});

  auto [skip, skip_oov] = term_embedding(make_term("w1 missing"), table);
  CHECK_FALSE(skip_oov);  // missing token skipped, mean over the rest
  CHECK(skip == std::vector<double>{0.2, 0.4});

  auto [zero, all_oov] = term_embedding(make_term("nope nada"), table);
  CHECK(all_oov);
  CHECK(zero == std::vector<double>{0.0, 0.0});
}

TEST_CASE("assemble_features lays out the schema deterministically") {
  const Lexicon lexicon({{"term", 0.3, {"T047"}}, {"other", 0.4, {"T059"}}});
  const EmbeddingTable table = [] {
    EmbeddingTable t;
    t.dim = 2;
    t.vectors = {{"term", {0.4, 0.2}}};
    return t;
  }();
  const FeatureSchema schema = FeatureSchema::make(lexicon, table);
  CHECK(schema.type_codes == std::vector<std::string>{"T047", "T059"});
  CHECK(schema.size() == 6);
  CHECK(schema.component_names() ==
        std::vector<std::string>{"tfidf", "cvalue", "sem_T047", "sem_T059", "emb_0", "emb_1"});

  AtrScores atr;
  atr.tfidf = {{"term", 2.08}};
  atr.cvalue = {{"term", 0.0}};
  const FeatureVector fv = assemble_features(make_term("term"), atr, lexicon, table, schema);
  CHECK(fv.values == std::vector<double>{2.08, 0.0, 1.0, 0.0, 0.4, 0.2});
  CHECK_FALSE(fv.oov);

  const FeatureVector again = assemble_features(make_term("term"), atr, lexicon, table, schema);
  CHECK(fv.values == again.values);  // pure function

  CHECK_THROWS_WITH_AS(assemble_features(make_term("absent"), atr, lexicon, table, schema),
                       doctest::Contains("missing from ATR"), std::invalid_argument);
}

TEST_CASE("assemble_features fills zero blocks for untyped all-OOV terms") {
  const Lexicon lexicon({{"other", 0.4, {"T059"}}});
  EmbeddingTable table;
  table.dim = 3;
  const FeatureSchema schema = FeatureSchema::make(lexicon, table);
  AtrScores atr;
  atr.tfidf = {{"zzz", 1.5}};
  atr.cvalue = {{"zzz", -0.5}};
  const FeatureVector fv = assemble_features(make_term("zzz"), atr, lexicon, table, schema);
  CHECK(fv.values == std::vector<double>{1.5, -0.5, 0.0, 0.0, 0.0, 0.0});
  CHECK(fv.oov);
}

TEST_CASE("scaler maps training range to [0,1] with clamping") {
  FeatureVector lo{"a", {0.0, 5.0, 7.0}, false};
  FeatureVector hi{"b", {10.0, 5.0, 9.0}, false};
  const std::vector<FeatureVector> train = {lo, hi};
  const Scaler scaler = Scaler::fit(train);

  CHECK(scaler.apply(std::vector<double>{5.0, 5.0, 8.0}) ==
        std::vector<double>{0.5, 0.0, 0.5});  // constant component -> 0
  CHECK(scaler.apply(std::vector<double>{-3.0, 99.0, 100.0}) ==
        std::vector<double>{0.0, 0.0, 1.0});  // clamped both ways
  CHECK_THROWS(scaler.apply(std::vector<double>{1.0}));
  CHECK_THROWS(Scaler::fit(std::vector<FeatureVector>{}));
}

TEST_CASE("scaled training vectors always land in the unit box") {
  Rng rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FeatureVector> train;
    const int n = rng.uniform_int(1, 12);
    for (int i = 0; i < n; ++i) {
      FeatureVector fv;
      fv.key = "t" + std::to_string(i);
      for (int c = 0; c < 4; ++c) fv.values.push_back(rng.uniform(-50.0, 50.0));
      train.push_back(std::move(fv));
    }
    const Scaler scaler = Scaler::fit(train);
    for (const FeatureVector& fv : train) {
      for (const double v : scaler.apply(fv.values)) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("scaler depends only on the training vectors") {
  std::vector<FeatureVector> train = {{"a", {0.0, 1.0}, false}, {"b", {2.0, 3.0}, false}};
  std::vector<FeatureVector> held_out = {{"h", {100.0, -100.0}, false}};
  const Scaler before = Scaler::fit(train);
  held_out[0].values = {-1e9, 1e9};  // perturb held-out data
  const Scaler after = Scaler::fit(train);
  CHECK(before.min == after.min);
  CHECK(before.max == after.max);
}

TEST_CASE("feature matrix dump names every component") {
  FeatureSchema schema;
  schema.type_codes = {"T047"};
  schema.embedding_dim = 2;
  const std::vector<FeatureVector> features = {{"alpha", {1.0, -0.5, 1.0, 0.25, 0.75}, false}};
  const auto path = std::filesystem::temp_directory_path() / "termrank_features.tsv";
  write_features_tsv(path, schema, features);
  std::ifstream in(path);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "key\ttfidf\tcvalue\tsem_T047\temb_0\temb_1\toov");
  CHECK(row == "alpha\t1.000000\t-0.500000\t1.000000\t0.250000\t0.750000\t0");
}
