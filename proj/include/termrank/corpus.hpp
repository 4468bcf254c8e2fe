#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace termrank {

enum class TokenClass { word, number, punctuation, stopword };

struct Token {
  std::string surface;
  std::string normalized;  // lowercased surface (ASCII lowering)
  std::size_t begin = 0;   // byte offsets into the document text, [begin, end)
  std::size_t end = 0;
  TokenClass cls = TokenClass::word;
};

struct Document {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
};

using StopwordSet = std::unordered_set<std::string>;

// Rule-based splitter: alphabetic runs (any non-ASCII byte counts as a
// letter) become word tokens, digit runs become number tokens, every other
// non-space character is a one-character punctuation token. A token whose
// normalized form is in the stopword set is reclassified as a stopword.
// Total and deterministic; spans are strictly increasing byte ranges.
std::vector<Token> tokenize(std::string_view text, const StopwordSet& stopwords);

enum class CorpusFormat { txt_dir, jsonl };

// txt-dir: every *.txt file in the directory is one document, id = filename
// stem. jsonl: one {"id": ..., "text": ...} object per line. Documents come
// back sorted by id and already tokenized. threads = 0 picks a default.
std::vector<Document> load_corpus(const std::filesystem::path& path, CorpusFormat format,
                                  const StopwordSet& stopwords, unsigned threads = 0);

}  // namespace termrank
