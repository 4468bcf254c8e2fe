#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>

#include "termrank/atr_scoring.hpp"
#include "termrank/corpus.hpp"
#include "termrank/pu_rank.hpp"

namespace termrank {

// All pipeline knobs plus input/output paths. Loaded from a plain key=value
// file ('#' starts a comment); unknown keys are rejected.
struct PipelineConfig {
  std::filesystem::path corpus;
  CorpusFormat corpus_format = CorpusFormat::txt_dir;
  std::filesystem::path lexicon;
  std::filesystem::path embeddings;
  std::filesystem::path stopwords;  // tokenizer stopword list (optional)
  std::filesystem::path stoplist;   // post-processing filter list (optional)
  std::filesystem::path out = ".";

  int max_ngram = 4;
  int min_tf = 2;
  int k_folds = 10;
  std::uint64_t seed = 42;
  double familiarity_threshold = 0.6;
  double svm_c = 1.0;
  double svm_gamma = 0.0;  // 0 = 1 / feature dimension
  int max_train_unlabeled = 20000;
  CValueVariant cvalue_variant = CValueVariant::raw;
  std::set<std::string> demote_tokens = {"not", "no", "and", "or"};
  unsigned threads = 0;  // 0 = hardware default
  ClassifierKind classifier = ClassifierKind::svm;
  bool postprocess = true;
  bool dump_features = false;  // rank also writes features.tsv

  CrossfoldConfig crossfold() const;
};

PipelineConfig load_config(const std::filesystem::path& path);

// Throws if any numeric key is outside its documented range.
void validate(const PipelineConfig& config);

}  // namespace termrank
