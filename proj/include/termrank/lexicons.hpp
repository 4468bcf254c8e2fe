#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "termrank/corpus.hpp"

namespace termrank {

struct LexiconEntry {
  std::string key;  // normalized term
  double familiarity = 0.0;
  std::set<std::string> semantic_types;
};

// The distant-supervision source: terms scored by how familiar they are to
// lay readers, each with an optional set of semantic-type codes.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  // TSV with header "term, familiarity, semantic_types"; semantic_types is
  // comma-separated and may be empty. Terms are normalized on load.
  static Lexicon load(const std::filesystem::path& path);

  const LexiconEntry* find(const std::string& key) const;

  // A term is jargon when it is in the lexicon with familiarity <= threshold
  // (inclusive boundary).
  bool is_jargon(const std::string& key, double threshold = 0.6) const;

  // Exact match first; otherwise back off to the head noun (last token).
  std::set<std::string> semantic_types_of(const std::string& key) const;

  // Sorted universe of all type codes appearing in the lexicon.
  std::vector<std::string> type_codes() const;

  std::set<std::string> keys() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, LexiconEntry> entries_;
};

struct EmbeddingTable {
  int dim = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;

  // Text format: header "<vocab_size> <dim>", then one "<word> v1 .. v_dim"
  // line per word. Line count and per-line dimension are enforced.
  static EmbeddingTable load(const std::filesystem::path& path);

  const std::vector<double>* find(const std::string& word) const {
    auto it = vectors.find(word);
    return it == vectors.end() ? nullptr : &it->second;
  }
};

// One term per line, normalized; blank lines ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

// Same format as the stopword list; used for gold positives and stoplists.
std::set<std::string> load_term_set(const std::filesystem::path& path);

}  // namespace termrank
