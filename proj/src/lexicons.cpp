#include "termrank/lexicons.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "termrank/term_extract.hpp"
#include "termrank/text_util.hpp"

namespace termrank {

Lexicon::Lexicon(std::vector<LexiconEntry> entries) {
  for (LexiconEntry& entry : entries) {
    entry.key = normalize_term(entry.key);
    if (entry.familiarity < 0.0 || entry.familiarity > 1.0) {
      throw std::runtime_error("lexicon: familiarity out of [0,1] for term '" + entry.key + "'");
    }
    const std::string key = entry.key;
    if (!entries_.emplace(key, std::move(entry)).second) {
      throw std::runtime_error("lexicon: duplicate term '" + key + "'");
    }
  }
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read lexicon: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("lexicon: empty file: " + path.string());
  const auto header = split(trim(line), '\t');
  if (header.size() != 3 || header[0] != "term" || header[1] != "familiarity" ||
      header[2] != "semantic_types") {
    throw std::runtime_error("lexicon: missing column; expected header "
                             "'term\\tfamiliarity\\tsemantic_types' in " +
                             path.string());
  }
  std::vector<LexiconEntry> entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw std::runtime_error("lexicon: missing column at line " + std::to_string(line_no));
    }
    LexiconEntry entry;
    entry.key = fields[0];
    entry.familiarity =
        parse_double(fields[1], "lexicon: familiarity at line " + std::to_string(line_no));
    for (const std::string& code : split(fields[2], ',')) {
      const std::string trimmed = trim(code);
      if (!trimmed.empty()) entry.semantic_types.insert(trimmed);
    }
    entries.push_back(std::move(entry));
  }
  return Lexicon(std::move(entries));
}

const LexiconEntry* Lexicon::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

bool Lexicon::is_jargon(const std::string& key, double threshold) const {
  const LexiconEntry* entry = find(key);
  return entry != nullptr && entry->familiarity <= threshold;
}

std::set<std::string> Lexicon::semantic_types_of(const std::string& key) const {
  if (const LexiconEntry* entry = find(key)) return entry->semantic_types;
  const auto words = split_ws(key);
  if (words.size() > 1) {
    if (const LexiconEntry* head = find(words.back())) return head->semantic_types;
  }
  return {};
}

std::vector<std::string> Lexicon::type_codes() const {
  std::set<std::string> codes;
  for (const auto& [key, entry] : entries_) {
    codes.insert(entry.semantic_types.begin(), entry.semantic_types.end());
  }
  return {codes.begin(), codes.end()};
}

std::set<std::string> Lexicon::keys() const {
  std::set<std::string> out;
  for (const auto& [key, entry] : entries_) out.insert(key);
  return out;
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read embeddings: " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("embeddings: empty file: " + path.string());
  }
  const auto header = split_ws(line);
  if (header.size() != 2) {
    throw std::runtime_error("embeddings: header must be '<vocab_size> <dim>'");
  }
  const long long vocab_size = parse_int(header[0], "embeddings: vocab_size");
  const long long dim = parse_int(header[1], "embeddings: dim");
  if (vocab_size < 0 || dim < 1) {
    throw std::runtime_error("embeddings: vocab_size must be >= 0 and dim >= 1");
  }

  EmbeddingTable table;
  table.dim = static_cast<int>(dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_ws(line);
    if (static_cast<long long>(fields.size()) != dim + 1) {
      throw std::runtime_error("embeddings: dimension mismatch at line " +
                               std::to_string(line_no) + " (expected " + std::to_string(dim) +
                               " components)");
    }
    std::vector<double> vec(static_cast<std::size_t>(dim));
    for (long long c = 0; c < dim; ++c) {
      vec[static_cast<std::size_t>(c)] = parse_double(
          fields[static_cast<std::size_t>(c + 1)],
          "embeddings: component at line " + std::to_string(line_no));
      if (!std::isfinite(vec[static_cast<std::size_t>(c)])) {
        throw std::runtime_error("embeddings: non-finite component at line " +
                                 std::to_string(line_no));
      }
    }
    if (!table.vectors.emplace(fields[0], std::move(vec)).second) {
      throw std::runtime_error("embeddings: duplicate word at line " + std::to_string(line_no));
    }
  }
  if (static_cast<long long>(table.vectors.size()) != vocab_size) {
    throw std::runtime_error("embeddings: header says " + std::to_string(vocab_size) +
                             " words but file has " + std::to_string(table.vectors.size()));
  }
  return table;
}

namespace {

std::set<std::string> load_lines_normalized(const std::filesystem::path& path,
                                            const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(std::string("cannot read ") + what + ": " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string term = normalize_term(line);
    if (!term.empty()) out.insert(term);
  }
  return out;
}

}  // namespace

StopwordSet load_stopwords(const std::filesystem::path& path) {
  const auto terms = load_lines_normalized(path, "stopword list");
  return StopwordSet(terms.begin(), terms.end());
}

std::set<std::string> load_term_set(const std::filesystem::path& path) {
  return load_lines_normalized(path, "term list");
}

}  // namespace termrank
