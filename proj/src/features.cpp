#include "termrank/features.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "termrank/text_util.hpp"

namespace termrank {

FeatureSchema FeatureSchema::make(const Lexicon& lexicon, const EmbeddingTable& table) {
  FeatureSchema schema;
  schema.type_codes = lexicon.type_codes();  // already sorted
  schema.embedding_dim = table.dim;
  return schema;
}

std::vector<std::string> FeatureSchema::component_names() const {
  std::vector<std::string> names;
  names.reserve(size());
  names.emplace_back("tfidf");
  names.emplace_back("cvalue");
  for (const std::string& code : type_codes) names.push_back("sem_" + code);
  for (int i = 0; i < embedding_dim; ++i) names.push_back("emb_" + std::to_string(i));
  return names;
}

std::pair<std::vector<double>, bool> term_embedding(const CandidateTerm& term,
                                                    const EmbeddingTable& table) {
  std::vector<double> mean(static_cast<std::size_t>(table.dim), 0.0);
  int hits = 0;
  for (const std::string& token : term.tokens) {
    if (const std::vector<double>* vec = table.find(token)) {
      for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += (*vec)[c];
      ++hits;
    }
  }
  if (hits == 0) return {std::move(mean), true};
  for (double& v : mean) v /= hits;
  return {std::move(mean), false};
}

FeatureVector assemble_features(const CandidateTerm& term, const AtrScores& atr,
                                const Lexicon& lexicon, const EmbeddingTable& table,
                                const FeatureSchema& schema) {
  auto tfidf_it = atr.tfidf.find(term.key);
  auto cvalue_it = atr.cvalue.find(term.key);
  if (tfidf_it == atr.tfidf.end() || cvalue_it == atr.cvalue.end()) {
    throw std::invalid_argument("assemble_features: term missing from ATR scores: " + term.key);
  }
  FeatureVector fv;
  fv.key = term.key;
  fv.values.reserve(schema.size());
  fv.values.push_back(tfidf_it->second);
  fv.values.push_back(cvalue_it->second);
  const std::set<std::string> types = lexicon.semantic_types_of(term.key);
  for (const std::string& code : schema.type_codes) {
    fv.values.push_back(types.count(code) ? 1.0 : 0.0);
  }
  auto [embedding, oov] = term_embedding(term, table);
  fv.values.insert(fv.values.end(), embedding.begin(), embedding.end());
  fv.oov = oov;
  return fv;
}

Scaler Scaler::fit(std::span<const FeatureVector> train) {
  if (train.empty()) throw std::invalid_argument("Scaler::fit: empty training set");
  const std::size_t dim = train.front().values.size();
  Scaler scaler;
  scaler.min.assign(dim, std::numeric_limits<double>::infinity());
  scaler.max.assign(dim, -std::numeric_limits<double>::infinity());
  for (const FeatureVector& fv : train) {
    if (fv.values.size() != dim) {
      throw std::invalid_argument("Scaler::fit: inconsistent feature dimensions");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      scaler.min[c] = std::min(scaler.min[c], fv.values[c]);
      scaler.max[c] = std::max(scaler.max[c], fv.values[c]);
    }
  }
  return scaler;
}

std::vector<double> Scaler::apply(std::span<const double> values) const {
  if (values.size() != min.size()) {
    throw std::invalid_argument("Scaler::apply: dimension mismatch");
  }
  std::vector<double> out(values.size());
  for (std::size_t c = 0; c < values.size(); ++c) {
    const double range = max[c] - min[c];
    if (range <= 0.0) {
      out[c] = 0.0;
    } else {
      out[c] = std::clamp((values[c] - min[c]) / range, 0.0, 1.0);
    }
  }
  return out;
}

void write_features_tsv(const std::filesystem::path& path, const FeatureSchema& schema,
                        const std::vector<FeatureVector>& features) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  out << "key";
  for (const std::string& name : schema.component_names()) out << '\t' << name;
  out << "\toov\n";
  for (const FeatureVector& fv : features) {
    out << fv.key;
    for (const double v : fv.values) out << '\t' << format_fixed(v, 6);
    out << '\t' << (fv.oov ? 1 : 0) << '\n';
  }
}

}  // namespace termrank
