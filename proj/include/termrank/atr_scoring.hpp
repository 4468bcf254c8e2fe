#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "termrank/term_extract.hpp"

namespace termrank {

// "raw" subtracts the average nested frequency from the length-weighted
// frequency as-is; "frantzi" length-weights the whole difference.
enum class CValueVariant { raw, frantzi };

CValueVariant parse_cvalue_variant(const std::string& name);
std::string to_string(CValueVariant variant);

struct AtrScores {
  std::map<std::string, double> tfidf;
  std::map<std::string, double> cvalue;
};

// Natural-log inverse document frequency. Requires 1 <= df <= corpus_size.
double idf(int df, int corpus_size);

// Corpus-level score: sum over documents of tf(t,d) * idf(t,D), which
// collapses to tf_total * idf since idf does not depend on d.
double tfidf_corpus(const CandidateTerm& term, int corpus_size);

// C-Value from the term's corpus frequency and the frequencies of the longer
// candidates containing it (empty span = not nested).
double cvalue_term(const CandidateTerm& term, std::span<const long long> parent_tfs,
                   CValueVariant variant);

// Wires the candidate set and nesting index to the two scorers.
class AtrScorer {
 public:
  AtrScorer(const std::vector<CandidateTerm>& candidates, const NestingIndex& nesting,
            int corpus_size);

  double tfidf(const std::string& key) const;
  double cvalue(const std::string& key, CValueVariant variant = CValueVariant::raw) const;
  AtrScores all(CValueVariant variant = CValueVariant::raw) const;

 private:
  const CandidateTerm& term(const std::string& key) const;

  const std::vector<CandidateTerm>& candidates_;
  const NestingIndex& nesting_;
  int corpus_size_;
  std::unordered_map<std::string, std::size_t> by_key_;
};

// TSV dump: key, tfidf, cvalue with fixed 6-decimal formatting.
void write_scores_tsv(const std::filesystem::path& path, const AtrScores& scores);

}  // namespace termrank
