#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "termrank/classifier.hpp"
#include "termrank/features.hpp"
#include "termrank/lexicons.hpp"

namespace termrank {

enum class PuLabel { positive, unlabeled };

struct LabeledTerm {
  std::string key;
  PuLabel label = PuLabel::unlabeled;
  FeatureVector features;
};

// Distant supervision: positive iff the lexicon marks the key as jargon at
// the given familiarity threshold; everything else stays unlabeled.
std::vector<LabeledTerm> label_positive_unlabeled(const std::vector<FeatureVector>& features,
                                                  const Lexicon& lexicon, double threshold = 0.6);

enum class PostAction { none, demoted, removed };

struct RankRecord {
  int rank = 0;  // 1-based; 0 for records dropped by post-processing
  std::string key;
  double score = 0.0;
  PuLabel label = PuLabel::unlabeled;
  int fold = -1;
  PostAction post_action = PostAction::none;
};

struct RankedList {
  std::vector<RankRecord> records;
};

enum class ClassifierKind { svm, logistic };

struct CrossfoldConfig {
  int k_folds = 10;
  std::uint64_t seed = 42;
  // RBF-SMO at full corpus scale is intractable on a desk machine; unlabeled
  // training examples beyond this cap are dropped by a seeded uniform sample.
  int max_train_unlabeled = 20000;
  ClassifierKind classifier = ClassifierKind::svm;
  SvmConfig svm;  // weight_pos <= 0 selects n_neg / n_pos
  unsigned threads = 0;
};

// Stratified seeded k-fold: fit scaler and classifier on nine folds, score
// the held-out fold with calibrated probabilities, merge all folds into one
// descending-score ranking (ties broken by key). Deterministic for a given
// (input set, config); independent of thread count.
RankedList rank_crossfold(const std::vector<LabeledTerm>& terms, const CrossfoldConfig& config);

struct PostprocessResult {
  RankedList ranking;                // kept then demoted, ranks renumbered
  std::vector<RankRecord> removed;   // stoplist hits, original order
};

// Stoplist keys are removed; multi-token terms containing a demote token move
// below all kept terms, preserving relative order within each stratum.
PostprocessResult postprocess(const RankedList& ranking, const std::set<std::string>& stoplist,
                              const std::set<std::string>& demote_tokens = {"not", "no", "and",
                                                                            "or"});

// The n most frequent single-word candidates not present in medical_keys;
// meant as a starting point for a hand-curated stoplist.
std::vector<std::string> generate_stoplist(const std::vector<CandidateTerm>& candidates,
                                           std::size_t n,
                                           const std::set<std::string>& medical_keys);

// TSV: rank, term, score (6 decimals), label, fold, post_action.
void write_ranking_tsv(const std::filesystem::path& path, const RankedList& ranking);
RankedList read_ranking_tsv(const std::filesystem::path& path);

std::string to_string(PuLabel label);
std::string to_string(PostAction action);

}  // namespace termrank
