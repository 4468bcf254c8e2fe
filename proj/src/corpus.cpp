#include "termrank/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "termrank/parallel.hpp"
#include "termrank/text_util.hpp"

namespace termrank {

namespace {

bool is_space_byte(unsigned char c) { return std::isspace(c) != 0; }
bool is_digit_byte(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, const StopwordSet& stopwords) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_space_byte(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    TokenClass cls;
    if (is_digit_byte(c)) {
      while (i < n && is_digit_byte(static_cast<unsigned char>(text[i]))) ++i;
      cls = TokenClass::number;
    } else if (is_word_byte(c)) {
      while (i < n && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
      cls = TokenClass::word;
    } else {
      ++i;
      cls = TokenClass::punctuation;
    }
    Token tok;
    tok.surface = std::string(text.substr(start, i - start));
    tok.normalized = to_lower_ascii(tok.surface);
    tok.begin = start;
    tok.end = i;
    tok.cls = stopwords.count(tok.normalized) ? TokenClass::stopword : cls;
    out.push_back(std::move(tok));
  }
  return out;
}

namespace {

std::vector<Document> load_txt_dir(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path) || !fs::is_directory(path)) {
    throw std::runtime_error("corpus path is not a readable directory: " + path.string());
  }
  std::vector<Document> docs;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    Document doc;
    doc.id = entry.path().stem().string();
    if (doc.id.empty()) throw std::runtime_error("empty document id: " + entry.path().string());
    doc.text = read_file(entry.path());
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read corpus file: " + path.string());
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path.string() + ": malformed jsonl at line " +
                               std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") ||
        !obj["id"].is_string() || !obj["text"].is_string()) {
      throw std::runtime_error(path.string() + ": malformed jsonl at line " +
                               std::to_string(line_no) +
                               ": expected object with string fields \"id\" and \"text\"");
    }
    Document doc;
    doc.id = obj["id"].get<std::string>();
    doc.text = obj["text"].get<std::string>();
    if (doc.id.empty()) {
      throw std::runtime_error(path.string() + ": empty document id at line " +
                               std::to_string(line_no));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace

std::vector<Document> load_corpus(const std::filesystem::path& path, CorpusFormat format,
                                  const StopwordSet& stopwords, unsigned threads) {
  std::vector<Document> docs =
      format == CorpusFormat::txt_dir ? load_txt_dir(path) : load_jsonl(path);

  std::sort(docs.begin(), docs.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (docs[i].id == docs[i - 1].id) {
      throw std::runtime_error("duplicate document id: " + docs[i].id);
    }
  }

  parallel_for(docs.size(), threads,
               [&](std::size_t i) { docs[i].tokens = tokenize(docs[i].text, stopwords); });
  return docs;
}

}  // namespace termrank
