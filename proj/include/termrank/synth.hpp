#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>

namespace termrank {

// Seeded synthetic-corpus generator. Plants single-word and two-word jargon
// terms whose words share an embedding cluster and frequency-matched
// distractor terms from a disjoint cluster, separated by punctuation,
// numbers, or stopwords so no unplanned multi-word candidate ever forms. A
// subset of the jargon goes into the lexicon (familiarity <= 0.6) as visible
// supervision; the full jargon list goes to the hidden gold file.
struct SynthParams {
  std::uint64_t seed = 42;
  int n_docs = 1000;
  int n_common_words = 400;  // background vocabulary incl. the distractor pool
  int n_jargon_words = 120;
  double jargon_fraction = 0.2;   // share of unit slots planted with jargon terms
  double visible_fraction = 0.6;  // share of jargon terms exposed in the lexicon
  int embedding_dim = 16;
};

struct SynthInfo {
  std::set<std::string> gold;             // every planted jargon term key
  std::set<std::string> lexicon_visible;  // jargon keys written with familiarity <= 0.6
  long long expected_candidates_min_tf1 = 0;  // window counts for max_ngram >= 2
  long long expected_candidates_min_tf2 = 0;
  int n_docs = 0;
};

// Writes corpus/ (txt-dir), lexicon.tsv, embeddings.txt, stopwords.txt,
// gold.txt and meta.json under out_dir. Fully determined by params.
SynthInfo generate_synthetic(const SynthParams& params, const std::filesystem::path& out_dir);

}  // namespace termrank
