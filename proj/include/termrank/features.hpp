#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "termrank/atr_scoring.hpp"
#include "termrank/lexicons.hpp"
#include "termrank/term_extract.hpp"

namespace termrank {

// Fixed component layout: [tfidf, cvalue, one 0/1 indicator per semantic
// type code (lexicographic order), embedding_dim mean-vector components].
struct FeatureSchema {
  std::vector<std::string> type_codes;
  int embedding_dim = 0;

  static FeatureSchema make(const Lexicon& lexicon, const EmbeddingTable& table);

  std::size_t size() const { return 2 + type_codes.size() + static_cast<std::size_t>(embedding_dim); }
  std::vector<std::string> component_names() const;
};

struct FeatureVector {
  std::string key;
  std::vector<double> values;
  bool oov = false;  // no token of the term had an embedding
};

// Component-wise mean over the term's tokens that are in the table; missing
// tokens are skipped. All missing -> zero vector and oov flag.
std::pair<std::vector<double>, bool> term_embedding(const CandidateTerm& term,
                                                    const EmbeddingTable& table);

FeatureVector assemble_features(const CandidateTerm& term, const AtrScores& atr,
                                const Lexicon& lexicon, const EmbeddingTable& table,
                                const FeatureSchema& schema);

// Per-component min-max fitted on training vectors only. apply maps x to
// (x - min) / (max - min) clamped to [0,1]; constant components map to 0.
struct Scaler {
  std::vector<double> min;
  std::vector<double> max;

  static Scaler fit(std::span<const FeatureVector> train);
  std::vector<double> apply(std::span<const double> values) const;
};

void write_features_tsv(const std::filesystem::path& path, const FeatureSchema& schema,
                        const std::vector<FeatureVector>& features);

}  // namespace termrank
