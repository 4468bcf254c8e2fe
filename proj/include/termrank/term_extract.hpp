#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "termrank/corpus.hpp"

namespace termrank {

// A candidate term: a contiguous run of word tokens with no stopword, number
// or punctuation inside. Identity is the normalized space-joined key; the
// first surface form ever seen (in id-sorted document order) is kept for
// display only.
struct CandidateTerm {
  std::string key;
  std::string surface;
  std::vector<std::string> tokens;  // normalized words
  int length = 0;                   // word count
  std::map<std::string, long long> tf_by_doc;
  long long tf_total = 0;
  int df = 0;
};

// parents[t] = keys of longer candidates whose token list contains t's token
// list contiguously. Terms with an empty parent set are "not nested".
struct NestingIndex {
  std::map<std::string, std::set<std::string>> parents;

  bool is_nested(const std::string& key) const {
    auto it = parents.find(key);
    return it != parents.end() && !it->second.empty();
  }
};

// Lowercases, collapses internal whitespace to single spaces, trims. Used
// for candidate identity and for lexicon lookup.
std::string normalize_term(std::string_view surface);

// Window-counted n-grams of lengths 1..max_ngram over contiguous word runs;
// overlapping occurrences all count. Candidates with tf_total < min_tf are
// dropped. Result is sorted by key and independent of document order.
std::vector<CandidateTerm> extract_candidates(const std::vector<Document>& corpus, int max_ngram,
                                              int min_tf, unsigned threads = 0);

NestingIndex build_nesting_index(const std::vector<CandidateTerm>& candidates);

// TSV dump: key, length, tf_total, df (header row).
void write_candidates_tsv(const std::filesystem::path& path,
                          const std::vector<CandidateTerm>& candidates);

}  // namespace termrank
