#include "termrank/atr_scoring.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "termrank/text_util.hpp"

namespace termrank {

CValueVariant parse_cvalue_variant(const std::string& name) {
  if (name == "raw") return CValueVariant::raw;
  if (name == "frantzi") return CValueVariant::frantzi;
  throw std::invalid_argument("unknown cvalue variant: '" + name + "' (expected raw|frantzi)");
}

std::string to_string(CValueVariant variant) {
  return variant == CValueVariant::raw ? "raw" : "frantzi";
}

double idf(int df, int corpus_size) {
  if (df < 1) throw std::invalid_argument("idf: term has df = 0 (not in corpus)");
  if (df > corpus_size) throw std::invalid_argument("idf: df exceeds corpus size");
  return std::log(static_cast<double>(corpus_size) / static_cast<double>(df));
}

double tfidf_corpus(const CandidateTerm& term, int corpus_size) {
  return static_cast<double>(term.tf_total) * idf(term.df, corpus_size);
}

double cvalue_term(const CandidateTerm& term, std::span<const long long> parent_tfs,
                   CValueVariant variant) {
  const double log_len = std::log2(static_cast<double>(term.length));
  const double tf = static_cast<double>(term.tf_total);
  if (parent_tfs.empty()) return log_len * tf;
  double parent_sum = 0.0;
  for (const long long ptf : parent_tfs) parent_sum += static_cast<double>(ptf);
  const double penalty = parent_sum / static_cast<double>(parent_tfs.size());
  if (variant == CValueVariant::raw) return log_len * tf - penalty;
  return log_len * (tf - penalty);
}

AtrScorer::AtrScorer(const std::vector<CandidateTerm>& candidates, const NestingIndex& nesting,
                     int corpus_size)
    : candidates_(candidates), nesting_(nesting), corpus_size_(corpus_size) {
  if (corpus_size_ < 1) throw std::invalid_argument("AtrScorer: corpus_size must be >= 1");
  by_key_.reserve(candidates_.size());
  for (std::size_t i = 0; i < candidates_.size(); ++i) by_key_.emplace(candidates_[i].key, i);
}

const CandidateTerm& AtrScorer::term(const std::string& key) const {
  auto it = by_key_.find(key);
  if (it == by_key_.end()) throw std::invalid_argument("AtrScorer: unknown term: " + key);
  return candidates_[it->second];
}

double AtrScorer::tfidf(const std::string& key) const {
  return tfidf_corpus(term(key), corpus_size_);
}

double AtrScorer::cvalue(const std::string& key, CValueVariant variant) const {
  const CandidateTerm& t = term(key);
  std::vector<long long> parent_tfs;
  auto it = nesting_.parents.find(key);
  if (it != nesting_.parents.end()) {
    parent_tfs.reserve(it->second.size());
    for (const std::string& parent : it->second) {
      parent_tfs.push_back(term(parent).tf_total);
    }
  }
  return cvalue_term(t, parent_tfs, variant);
}

AtrScores AtrScorer::all(CValueVariant variant) const {
  AtrScores scores;
  for (const CandidateTerm& t : candidates_) {
    scores.tfidf.emplace(t.key, tfidf(t.key));
    scores.cvalue.emplace(t.key, cvalue(t.key, variant));
  }
  return scores;
}

void write_scores_tsv(const std::filesystem::path& path, const AtrScores& scores) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  out << "key\ttfidf\tcvalue\n";
  for (const auto& [key, tfidf_score] : scores.tfidf) {
    out << key << '\t' << format_fixed(tfidf_score, 6) << '\t'
        << format_fixed(scores.cvalue.at(key), 6) << '\n';
  }
}

}  // namespace termrank
