#include "termrank/pu_rank.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "termrank/parallel.hpp"
#include "termrank/rng.hpp"
#include "termrank/text_util.hpp"

namespace termrank {

std::vector<LabeledTerm> label_positive_unlabeled(const std::vector<FeatureVector>& features,
                                                  const Lexicon& lexicon, double threshold) {
  std::vector<LabeledTerm> out;
  out.reserve(features.size());
  for (const FeatureVector& fv : features) {
    LabeledTerm term;
    term.key = fv.key;
    term.label = lexicon.is_jargon(fv.key, threshold) ? PuLabel::positive : PuLabel::unlabeled;
    term.features = fv;
    out.push_back(std::move(term));
  }
  return out;
}

namespace {

struct FoldPlan {
  std::vector<int> fold_of;          // per sorted-term index
  std::vector<std::size_t> order;    // indices into the input, sorted by key
};

FoldPlan assign_folds(const std::vector<LabeledTerm>& terms, int k_folds, std::uint64_t seed) {
  FoldPlan plan;
  plan.order.resize(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) plan.order[i] = i;
  std::sort(plan.order.begin(), plan.order.end(), [&](std::size_t a, std::size_t b) {
    return terms[a].key < terms[b].key;
  });
  for (std::size_t i = 1; i < plan.order.size(); ++i) {
    if (terms[plan.order[i]].key == terms[plan.order[i - 1]].key) {
      throw std::invalid_argument("rank_crossfold: duplicate term key: " +
                                  terms[plan.order[i]].key);
    }
  }

  // Stratified by label: shuffle each stratum, then deal positions round-robin.
  std::vector<std::size_t> positives;
  std::vector<std::size_t> unlabeled;
  for (std::size_t pos = 0; pos < plan.order.size(); ++pos) {
    (terms[plan.order[pos]].label == PuLabel::positive ? positives : unlabeled).push_back(pos);
  }
  Rng rng(seed);
  rng.shuffle(positives);
  rng.shuffle(unlabeled);

  plan.fold_of.assign(terms.size(), -1);
  for (std::size_t p = 0; p < positives.size(); ++p) {
    plan.fold_of[positives[p]] = static_cast<int>(p % static_cast<std::size_t>(k_folds));
  }
  for (std::size_t p = 0; p < unlabeled.size(); ++p) {
    plan.fold_of[unlabeled[p]] = static_cast<int>(p % static_cast<std::size_t>(k_folds));
  }
  return plan;
}

}  // namespace

RankedList rank_crossfold(const std::vector<LabeledTerm>& terms, const CrossfoldConfig& config) {
  const std::size_t n = terms.size();
  if (config.k_folds < 2) throw std::invalid_argument("rank_crossfold: k_folds must be >= 2");
  if (n < static_cast<std::size_t>(config.k_folds)) {
    throw std::invalid_argument("rank_crossfold: fewer terms than folds");
  }
  if (config.max_train_unlabeled < 1) {
    throw std::invalid_argument("rank_crossfold: max_train_unlabeled must be >= 1");
  }
  const int k = config.k_folds;
  const FoldPlan plan = assign_folds(terms, k, config.seed);

  std::vector<std::size_t> pos_per_fold(static_cast<std::size_t>(k), 0);
  std::vector<std::size_t> unl_per_fold(static_cast<std::size_t>(k), 0);
  std::size_t total_pos = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const auto f = static_cast<std::size_t>(plan.fold_of[pos]);
    if (terms[plan.order[pos]].label == PuLabel::positive) {
      ++pos_per_fold[f];
      ++total_pos;
    } else {
      ++unl_per_fold[f];
    }
  }
  const std::size_t total_unl = n - total_pos;
  for (int f = 0; f < k; ++f) {
    if (total_pos - pos_per_fold[static_cast<std::size_t>(f)] == 0) {
      throw std::invalid_argument(
          "rank_crossfold: a training split has no positive terms; reduce k_folds or widen "
          "the lexicon supervision");
    }
    if (total_unl - unl_per_fold[static_cast<std::size_t>(f)] == 0) {
      throw std::invalid_argument(
          "rank_crossfold: a training split has no unlabeled terms; reduce k_folds");
    }
  }

  std::vector<double> score(n, 0.0);

  parallel_for(static_cast<std::size_t>(k), config.threads, [&](std::size_t fold) {
    std::vector<std::size_t> train_pos;   // positions (into plan.order)
    std::vector<std::size_t> train_unl;
    std::vector<std::size_t> test_pos;
    for (std::size_t pos = 0; pos < n; ++pos) {
      if (plan.fold_of[pos] == static_cast<int>(fold)) {
        test_pos.push_back(pos);
      } else if (terms[plan.order[pos]].label == PuLabel::positive) {
        train_pos.push_back(pos);
      } else {
        train_unl.push_back(pos);
      }
    }

    // Seeded unlabeled subsample, independent per fold.
    if (train_unl.size() > static_cast<std::size_t>(config.max_train_unlabeled)) {
      Rng sub_rng(derive_seed(config.seed, fold));
      const auto picks = sub_rng.sample_without_replacement(
          train_unl.size(), static_cast<std::size_t>(config.max_train_unlabeled));
      std::vector<std::size_t> sampled;
      sampled.reserve(picks.size());
      for (const std::size_t p : picks) sampled.push_back(train_unl[p]);
      std::sort(sampled.begin(), sampled.end());
      train_unl = std::move(sampled);
    }

    std::vector<FeatureVector> train_fv;
    train_fv.reserve(train_pos.size() + train_unl.size());
    std::vector<int> train_y;
    for (const std::size_t pos : train_pos) {
      train_fv.push_back(terms[plan.order[pos]].features);
      train_y.push_back(1);
    }
    for (const std::size_t pos : train_unl) {
      train_fv.push_back(terms[plan.order[pos]].features);
      train_y.push_back(-1);
    }

    const Scaler scaler = Scaler::fit(train_fv);
    std::vector<std::vector<double>> train_x;
    train_x.reserve(train_fv.size());
    for (const FeatureVector& fv : train_fv) train_x.push_back(scaler.apply(fv.values));

    SvmConfig svm_config = config.svm;
    if (svm_config.weight_pos <= 0.0) {
      svm_config.weight_pos =
          static_cast<double>(train_unl.size()) / static_cast<double>(train_pos.size());
    }

    if (config.classifier == ClassifierKind::svm) {
      const SvmModel model = train_svm(train_x, train_y, svm_config);
      std::vector<double> decisions(train_x.size());
      for (std::size_t i = 0; i < train_x.size(); ++i) {
        decisions[i] = model.decision_value(train_x[i]);
      }
      const PlattCalibration calibration = platt_fit(decisions, train_y);
      for (const std::size_t pos : test_pos) {
        const auto x = scaler.apply(terms[plan.order[pos]].features.values);
        score[pos] = predict_proba(model, calibration, x);
      }
    } else {
      LogisticConfig lr_config;
      lr_config.weight_pos = svm_config.weight_pos;
      lr_config.weight_neg = svm_config.weight_neg;
      const LogisticModel model = train_logistic(train_x, train_y, lr_config);
      for (const std::size_t pos : test_pos) {
        const auto x = scaler.apply(terms[plan.order[pos]].features.values);
        score[pos] = model.probability(x);
      }
    }
  });

  std::vector<std::size_t> by_score(n);
  for (std::size_t pos = 0; pos < n; ++pos) by_score[pos] = pos;
  std::sort(by_score.begin(), by_score.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return terms[plan.order[a]].key < terms[plan.order[b]].key;
  });

  RankedList ranking;
  ranking.records.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t pos = by_score[r];
    RankRecord record;
    record.rank = static_cast<int>(r + 1);
    record.key = terms[plan.order[pos]].key;
    record.score = score[pos];
    record.label = terms[plan.order[pos]].label;
    record.fold = plan.fold_of[pos];
    record.post_action = PostAction::none;
    ranking.records.push_back(std::move(record));
  }
  return ranking;
}

PostprocessResult postprocess(const RankedList& ranking, const std::set<std::string>& stoplist,
                              const std::set<std::string>& demote_tokens) {
  PostprocessResult result;
  std::vector<RankRecord> kept;
  std::vector<RankRecord> demoted;
  for (const RankRecord& record : ranking.records) {
    if (stoplist.count(record.key)) {
      RankRecord removed = record;
      removed.rank = 0;
      removed.post_action = PostAction::removed;
      result.removed.push_back(std::move(removed));
      continue;
    }
    const auto tokens = split_ws(record.key);
    const bool demote =
        tokens.size() >= 2 && std::any_of(tokens.begin(), tokens.end(), [&](const std::string& t) {
          return demote_tokens.count(t) > 0;
        });
    RankRecord out = record;
    out.post_action = demote ? PostAction::demoted : PostAction::none;
    (demote ? demoted : kept).push_back(std::move(out));
  }
  result.ranking.records.reserve(kept.size() + demoted.size());
  int rank = 0;
  for (auto& record : kept) {
    record.rank = ++rank;
    result.ranking.records.push_back(std::move(record));
  }
  for (auto& record : demoted) {
    record.rank = ++rank;
    result.ranking.records.push_back(std::move(record));
  }
  return result;
}

std::vector<std::string> generate_stoplist(const std::vector<CandidateTerm>& candidates,
                                           std::size_t n,
                                           const std::set<std::string>& medical_keys) {
  std::vector<const CandidateTerm*> singles;
  for (const CandidateTerm& term : candidates) {
    if (term.length == 1 && medical_keys.count(term.key) == 0) singles.push_back(&term);
  }
  std::sort(singles.begin(), singles.end(), [](const CandidateTerm* a, const CandidateTerm* b) {
    if (a->tf_total != b->tf_total) return a->tf_total > b->tf_total;
    return a->key < b->key;
  });
  std::vector<std::string> out;
  out.reserve(std::min(n, singles.size()));
  for (std::size_t i = 0; i < singles.size() && i < n; ++i) out.push_back(singles[i]->key);
  return out;
}

std::string to_string(PuLabel label) {
  return label == PuLabel::positive ? "positive" : "unlabeled";
}

std::string to_string(PostAction action) {
  switch (action) {
    case PostAction::none: return "none";
    case PostAction::demoted: return "demoted";
    case PostAction::removed: return "removed";
  }
  return "none";
}

namespace {

PuLabel parse_label(const std::string& s) {
  if (s == "positive") return PuLabel::positive;
  if (s == "unlabeled") return PuLabel::unlabeled;
  throw std::runtime_error("ranking TSV: unknown label '" + s + "'");
}

PostAction parse_post_action(const std::string& s) {
  if (s == "none") return PostAction::none;
  if (s == "demoted") return PostAction::demoted;
  if (s == "removed") return PostAction::removed;
  throw std::runtime_error("ranking TSV: unknown post_action '" + s + "'");
}

}  // namespace

void write_ranking_tsv(const std::filesystem::path& path, const RankedList& ranking) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  out << "rank\tterm\tscore\tlabel\tfold\tpost_action\n";
  for (const RankRecord& record : ranking.records) {
    out << record.rank << '\t' << record.key << '\t' << format_fixed(record.score, 6) << '\t'
        << to_string(record.label) << '\t' << record.fold << '\t'
        << to_string(record.post_action) << '\n';
  }
}

RankedList read_ranking_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read ranking: " + path.string());
  std::string line;
  if (!std::getline(in, line) ||
      trim(line) != "rank\tterm\tscore\tlabel\tfold\tpost_action") {
    throw std::runtime_error("ranking TSV: bad or missing header in " + path.string());
  }
  RankedList ranking;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 6) {
      throw std::runtime_error("ranking TSV: expected 6 columns at line " +
                               std::to_string(line_no));
    }
    RankRecord record;
    record.rank = static_cast<int>(parse_int(fields[0], "ranking TSV rank"));
    record.key = fields[1];
    record.score = parse_double(fields[2], "ranking TSV score");
    record.label = parse_label(fields[3]);
    record.fold = static_cast<int>(parse_int(fields[4], "ranking TSV fold"));
    record.post_action = parse_post_action(fields[5]);
    ranking.records.push_back(std::move(record));
  }
  return ranking;
}

}  // namespace termrank
