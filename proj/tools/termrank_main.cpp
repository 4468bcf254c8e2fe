#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "termrank/atr_scoring.hpp"
#include "termrank/classifier.hpp"
#include "termrank/config.hpp"
#include "termrank/corpus.hpp"
#include "termrank/evaluation.hpp"
#include "termrank/features.hpp"
#include "termrank/lexicons.hpp"
#include "termrank/pu_rank.hpp"
#include "termrank/synth.hpp"
#include "termrank/term_extract.hpp"
#include "termrank/text_util.hpp"

namespace {

namespace fs = std::filesystem;
using namespace termrank;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

PipelineConfig load_with_overrides(const std::string& config_path, const Overrides& overrides) {
  PipelineConfig config = load_config(config_path);
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.out) config.out = *overrides.out;
  if (overrides.threads) config.threads = *overrides.threads;
  fs::create_directories(config.out);
  return config;
}

StopwordSet stopwords_of(const PipelineConfig& config) {
  if (config.stopwords.empty()) return {};
  return load_stopwords(config.stopwords);
}

std::vector<Document> corpus_of(const PipelineConfig& config, const StopwordSet& stopwords) {
  if (config.corpus.empty()) throw std::runtime_error("config: 'corpus' path is required");
  return load_corpus(config.corpus, config.corpus_format, stopwords, config.threads);
}

int run_extract(const std::string& config_path, const Overrides& overrides) {
  const PipelineConfig config = load_with_overrides(config_path, overrides);
  const auto corpus = corpus_of(config, stopwords_of(config));
  const auto candidates =
      extract_candidates(corpus, config.max_ngram, config.min_tf, config.threads);
  const fs::path out = config.out / "candidates.tsv";
  write_candidates_tsv(out, candidates);
  std::cout << "wrote " << out.string() << " (" << candidates.size() << " candidates from "
            << corpus.size() << " documents)\n";
  return 0;
}

int run_score(const std::string& config_path, const Overrides& overrides) {
  const PipelineConfig config = load_with_overrides(config_path, overrides);
  const auto corpus = corpus_of(config, stopwords_of(config));
  const auto candidates =
      extract_candidates(corpus, config.max_ngram, config.min_tf, config.threads);
  const NestingIndex nesting = build_nesting_index(candidates);
  const AtrScorer scorer(candidates, nesting, static_cast<int>(corpus.size()));
  const AtrScores scores = scorer.all(config.cvalue_variant);
  const fs::path out = config.out / "scores.tsv";
  write_scores_tsv(out, scores);
  std::cout << "wrote " << out.string() << " (" << scores.tfidf.size() << " terms)\n";
  return 0;
}

int run_rank(const std::string& config_path, const Overrides& overrides) {
  const PipelineConfig config = load_with_overrides(config_path, overrides);
  if (config.lexicon.empty()) throw std::runtime_error("config: 'lexicon' path is required");
  if (config.embeddings.empty()) {
    throw std::runtime_error("config: 'embeddings' path is required");
  }
  const auto corpus = corpus_of(config, stopwords_of(config));
  const auto candidates =
      extract_candidates(corpus, config.max_ngram, config.min_tf, config.threads);
  const NestingIndex nesting = build_nesting_index(candidates);
  const AtrScorer scorer(candidates, nesting, static_cast<int>(corpus.size()));
  const AtrScores scores = scorer.all(config.cvalue_variant);

  const Lexicon lexicon = Lexicon::load(config.lexicon);
  const EmbeddingTable table = EmbeddingTable::load(config.embeddings);
  const FeatureSchema schema = FeatureSchema::make(lexicon, table);
  std::vector<FeatureVector> features;
  features.reserve(candidates.size());
  for (const CandidateTerm& term : candidates) {
    features.push_back(assemble_features(term, scores, lexicon, table, schema));
  }
  const auto labeled = label_positive_unlabeled(features, lexicon, config.familiarity_threshold);
  if (config.dump_features) {
    write_features_tsv(config.out / "features.tsv", schema, features);
  }

  RankedList ranking = rank_crossfold(labeled, config.crossfold());
  if (config.postprocess) {
    std::set<std::string> stoplist;
    if (!config.stoplist.empty()) stoplist = load_term_set(config.stoplist);
    ranking = postprocess(ranking, stoplist, config.demote_tokens).ranking;
  }
  const fs::path out = config.out / "ranked.tsv";
  write_ranking_tsv(out, ranking);
  std::size_t positives = 0;
  for (const auto& record : ranking.records) {
    if (record.label == PuLabel::positive) ++positives;
  }
  std::cout << "wrote " << out.string() << " (" << ranking.records.size() << " terms, "
            << positives << " lexicon-positive)\n";
  return 0;
}

int run_evaluate(const std::string& ranking_path, const std::string& gold_path,
                 const std::string& out_dir) {
  fs::create_directories(out_dir);
  const RankedList ranking = read_ranking_tsv(ranking_path);
  const std::set<std::string> positives = load_term_set(gold_path);
  const auto scores = rank_order_scores(ranking);
  std::vector<std::string> universe;
  universe.reserve(scores.size());
  for (const auto& [key, score] : scores) universe.push_back(key);
  const GoldLabels gold = GoldLabels::from_positives(positives, universe);

  const RocResult roc = roc_auc(scores, gold);
  const CurveSeries pu = pu_curve(ranking, positives);
  const PuPeak peak = peak_of(pu);
  const fs::path out = fs::path(out_dir) / "summary.json";
  write_summary_json(out, roc.auc, peak);
  std::cout << "auc=" << format_fixed(roc.auc, 6) << " peak_pu=" << format_fixed(peak.pu, 6)
            << " peak_k=" << peak.k << " -> " << out.string() << '\n';
  return 0;
}

int run_curves(const std::string& ranking_path, const std::string& gold_path,
               const std::string& out_dir, std::size_t stride) {
  fs::create_directories(out_dir);
  const RankedList ranking = read_ranking_tsv(ranking_path);
  const std::set<std::string> positives = load_term_set(gold_path);
  const auto scores = rank_order_scores(ranking);
  std::vector<std::string> universe;
  universe.reserve(scores.size());
  for (const auto& [key, score] : scores) universe.push_back(key);
  const GoldLabels gold = GoldLabels::from_positives(positives, universe);

  const RocResult roc = roc_auc(scores, gold);
  const CurveSeries pu = pu_curve(ranking, positives, stride);
  const fs::path roc_path = fs::path(out_dir) / "roc.csv";
  const fs::path pu_path = fs::path(out_dir) / "pu.csv";
  export_curve(roc.curve, roc_path);
  export_curve(pu, pu_path);
  std::cout << "wrote " << roc_path.string() << " and " << pu_path.string() << '\n';
  return 0;
}

int run_synth(const SynthParams& params, const std::string& out_dir) {
  const SynthInfo info = generate_synthetic(params, out_dir);
  std::cout << "wrote fixture under " << out_dir << " (" << info.n_docs << " documents, "
            << info.gold.size() << " gold terms, " << info.lexicon_visible.size()
            << " visible in lexicon)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termrank: mine candidate terms from a corpus and rank them by importance"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  std::uint64_t seed_flag = 0;
  std::string out_flag;
  unsigned threads_flag = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "pipeline config file (key=value lines)")
        ->required();
    cmd->add_option("--seed", seed_flag, "override the config seed");
    cmd->add_option("--out", out_flag, "override the output directory");
    cmd->add_option("--threads", threads_flag, "override the worker thread count");
  };
  auto gather_overrides = [&](CLI::App* cmd) {
    if (cmd->count("--seed") > 0) overrides.seed = seed_flag;
    if (cmd->count("--out") > 0) overrides.out = out_flag;
    if (cmd->count("--threads") > 0) overrides.threads = threads_flag;
  };

  CLI::App* extract = app.add_subcommand("extract", "mine candidate terms into candidates.tsv");
  add_common(extract);
  CLI::App* score = app.add_subcommand("score", "compute TF*IDF and C-Value into scores.tsv");
  add_common(score);
  CLI::App* rank =
      app.add_subcommand("rank", "run the full distant-supervision ranking into ranked.tsv");
  add_common(rank);

  std::string ranking_path;
  std::string gold_path;
  std::string eval_out = ".";
  CLI::App* evaluate = app.add_subcommand("evaluate", "score a ranking against gold terms");
  evaluate->add_option("--ranking", ranking_path, "ranked.tsv produced by 'rank'")->required();
  evaluate->add_option("--gold", gold_path, "gold positive terms, one per line")->required();
  evaluate->add_option("--out", eval_out, "output directory for summary.json");

  std::size_t stride = 1;
  CLI::App* curves = app.add_subcommand("curves", "export ROC and PU curves as CSV");
  curves->add_option("--ranking", ranking_path, "ranked.tsv produced by 'rank'")->required();
  curves->add_option("--gold", gold_path, "gold positive terms, one per line")->required();
  curves->add_option("--out", eval_out, "output directory for roc.csv and pu.csv");
  curves->add_option("--stride", stride, "emit every stride-th PU point");

  SynthParams synth_params;
  std::string synth_out = "synth";
  CLI::App* synth = app.add_subcommand("synth", "generate a seeded synthetic fixture");
  synth->add_option("--out", synth_out, "fixture output directory");
  synth->add_option("--seed", synth_params.seed, "generator seed");
  synth->add_option("--n-docs", synth_params.n_docs, "number of documents");
  synth->add_option("--n-common", synth_params.n_common_words, "background vocabulary size");
  synth->add_option("--n-jargon", synth_params.n_jargon_words, "jargon vocabulary size");
  synth->add_option("--jargon-fraction", synth_params.jargon_fraction,
                    "share of token slots planted with jargon");
  synth->add_option("--visible-fraction", synth_params.visible_fraction,
                    "share of jargon terms exposed in the lexicon");
  synth->add_option("--dim", synth_params.embedding_dim, "embedding dimension");

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) {
      gather_overrides(extract);
      return run_extract(config_path, overrides);
    }
    if (score->parsed()) {
      gather_overrides(score);
      return run_score(config_path, overrides);
    }
    if (rank->parsed()) {
      gather_overrides(rank);
      return run_rank(config_path, overrides);
    }
    if (evaluate->parsed()) return run_evaluate(ranking_path, gold_path, eval_out);
    if (curves->parsed()) return run_curves(ranking_path, gold_path, eval_out, stride);
    if (synth->parsed()) return run_synth(synth_params, synth_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
