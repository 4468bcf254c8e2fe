#include "termrank/config.hpp"

#include <fstream>
#include <stdexcept>

#include "termrank/term_extract.hpp"
#include "termrank/text_util.hpp"

namespace termrank {

CrossfoldConfig PipelineConfig::crossfold() const {
  CrossfoldConfig cf;
  cf.k_folds = k_folds;
  cf.seed = seed;
  cf.max_train_unlabeled = max_train_unlabeled;
  cf.classifier = classifier;
  cf.threads = threads;
  cf.svm.c = svm_c;
  cf.svm.gamma = svm_gamma;
  cf.svm.weight_pos = 0.0;  // auto: n_neg / n_pos per training split
  return cf;
}

namespace {

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw std::runtime_error("config: key '" + key + "' expects a boolean, got '" + value + "'");
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config: " + path.string());
  PipelineConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: expected key=value at line " + std::to_string(line_no));
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "corpus") {
      config.corpus = value;
    } else if (key == "corpus_format") {
      if (value == "txt-dir") config.corpus_format = CorpusFormat::txt_dir;
      else if (value == "jsonl") config.corpus_format = CorpusFormat::jsonl;
      else throw std::runtime_error("config: corpus_format must be txt-dir or jsonl");
    } else if (key == "lexicon") {
      config.lexicon = value;
    } else if (key == "embeddings") {
      config.embeddings = value;
    } else if (key == "stopwords") {
      config.stopwords = value;
    } else if (key == "stoplist") {
      config.stoplist = value;
    } else if (key == "out") {
      config.out = value;
    } else if (key == "max_ngram") {
      config.max_ngram = static_cast<int>(parse_int(value, "config: max_ngram"));
    } else if (key == "min_tf") {
      config.min_tf = static_cast<int>(parse_int(value, "config: min_tf"));
    } else if (key == "k_folds") {
      config.k_folds = static_cast<int>(parse_int(value, "config: k_folds"));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(value, "config: seed"));
    } else if (key == "familiarity_threshold") {
      config.familiarity_threshold = parse_double(value, "config: familiarity_threshold");
    } else if (key == "svm.c") {
      config.svm_c = parse_double(value, "config: svm.c");
    } else if (key == "svm.gamma") {
      config.svm_gamma = value == "auto" ? 0.0 : parse_double(value, "config: svm.gamma");
    } else if (key == "max_train_unlabeled") {
      config.max_train_unlabeled =
          static_cast<int>(parse_int(value, "config: max_train_unlabeled"));
    } else if (key == "cvalue.variant") {
      config.cvalue_variant = parse_cvalue_variant(value);
    } else if (key == "demote_tokens") {
      config.demote_tokens.clear();
      for (const std::string& token : split(value, ',')) {
        const std::string normalized = normalize_term(token);
        if (!normalized.empty()) config.demote_tokens.insert(normalized);
      }
    } else if (key == "threads") {
      config.threads = static_cast<unsigned>(parse_int(value, "config: threads"));
    } else if (key == "classifier") {
      if (value == "svm") config.classifier = ClassifierKind::svm;
      else if (value == "logistic") config.classifier = ClassifierKind::logistic;
      else throw std::runtime_error("config: classifier must be svm or logistic");
    } else if (key == "postprocess") {
      config.postprocess = parse_bool(value, key);
    } else if (key == "dump_features") {
      config.dump_features = parse_bool(value, key);
    } else {
      throw std::runtime_error("config: unknown key '" + key + "' at line " +
                               std::to_string(line_no));
    }
  }
  validate(config);
  return config;
}

void validate(const PipelineConfig& config) {
  if (config.max_ngram < 1) throw std::runtime_error("config: max_ngram must be >= 1");
  if (config.min_tf < 1) throw std::runtime_error("config: min_tf must be >= 1");
  if (config.k_folds < 2) throw std::runtime_error("config: k_folds must be >= 2");
  if (config.familiarity_threshold < 0.0 || config.familiarity_threshold > 1.0) {
    throw std::runtime_error("config: familiarity_threshold must be in [0,1]");
  }
  if (config.svm_c <= 0.0) throw std::runtime_error("config: svm.c must be positive");
  if (config.svm_gamma < 0.0) {
    throw std::runtime_error("config: svm.gamma must be positive or 'auto'");
  }
  if (config.max_train_unlabeled < 1) {
    throw std::runtime_error("config: max_train_unlabeled must be >= 1");
  }
}

}  // namespace termrank
