#include "termrank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "termrank/rng.hpp"
#include "termrank/text_util.hpp"

namespace termrank {

namespace {

const std::vector<std::string> kSeparatorStopwords = {"the", "of", "to", "in",
                                                      "with", "on", "at", "by"};
const std::vector<std::string> kTypePool = {"T047", "T059", "T121", "T184"};

std::string make_word(Rng& rng) {
  static const std::string consonants = "bcdfghjklmnprstvwz";
  static const std::string vowels = "aeiou";
  const int syllables = rng.uniform_int(2, 4);
  std::string word;
  for (int s = 0; s < syllables; ++s) {
    word += consonants[static_cast<std::size_t>(rng.below(consonants.size()))];
    word += vowels[static_cast<std::size_t>(rng.below(vowels.size()))];
    if (rng.unit() < 0.3) {
      word += consonants[static_cast<std::size_t>(rng.below(consonants.size()))];
    }
  }
  return word;
}

std::vector<std::string> make_vocab(Rng& rng, int count, std::unordered_set<std::string>& used) {
  std::vector<std::string> vocab;
  vocab.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(vocab.size()) < count) {
    std::string word = make_word(rng);
    if (used.insert(word).second) vocab.push_back(std::move(word));
  }
  return vocab;
}

struct PlantedTerm {
  std::vector<std::string> words;
  long long tf = 0;
  bool jargon = false;
};

// Splits a budget of occurrences over `count` terms with uniform jitter;
// every term gets at least min_tf occurrences when the budget is nonzero.
std::vector<long long> plan_frequencies(Rng& rng, int count, long long budget,
                                        long long min_tf) {
  std::vector<long long> tf(static_cast<std::size_t>(count), 0);
  if (count == 0 || budget <= 0) return tf;
  std::vector<double> weight(static_cast<std::size_t>(count));
  double total = 0.0;
  for (double& w : weight) {
    w = rng.uniform(0.5, 1.5);
    total += w;
  }
  for (std::size_t i = 0; i < tf.size(); ++i) {
    tf[i] = std::max(min_tf, std::llround(static_cast<double>(budget) * weight[i] / total));
  }
  return tf;
}

std::vector<double> cluster_vector(Rng& rng, const std::vector<double>& center, double sigma) {
  std::vector<double> v(center.size());
  for (std::size_t c = 0; c < center.size(); ++c) {
    v[c] = std::clamp(center[c] + sigma * rng.normal(), 0.0, 1.0);
  }
  return v;
}

}  // namespace

SynthInfo generate_synthetic(const SynthParams& params, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  if (params.n_docs < 1 || params.n_common_words < 8 || params.n_jargon_words < 0 ||
      params.embedding_dim < 1 || params.jargon_fraction < 0.0 ||
      params.jargon_fraction > 0.9 || params.visible_fraction < 0.0 ||
      params.visible_fraction > 1.0) {
    throw std::invalid_argument("generate_synthetic: parameter out of range");
  }
  fs::create_directories(out_dir / "corpus");

  Rng rng(params.seed);
  std::unordered_set<std::string> used(kSeparatorStopwords.begin(), kSeparatorStopwords.end());
  used.insert({"no", "not", "and", "or"});
  const std::vector<std::string> common = make_vocab(rng, params.n_common_words, used);
  const std::vector<std::string> jargon = make_vocab(rng, params.n_jargon_words, used);

  // The tail of the common vocabulary is reserved for distractor terms whose
  // frequency profile mirrors the jargon exactly; only the head is used as
  // Zipf-weighted background filler.
  const int n_rare = std::min(params.n_jargon_words, params.n_common_words / 2);
  const int n_broad = params.n_common_words - n_rare;
  const std::vector<std::string> broad(common.begin(), common.begin() + n_broad);
  const std::vector<std::string> rare(common.begin() + n_broad, common.end());

  // Term inventory. Pairs reuse the single-word vocabulary of their side, so
  // every sub-window of a planted unit is itself a planted term.
  std::vector<PlantedTerm> terms;
  const int n_pairs = params.n_jargon_words / 2;
  const bool plant_jargon = params.jargon_fraction > 0.0 && params.n_jargon_words > 0;
  std::vector<std::size_t> jargon_single_idx;
  std::vector<std::size_t> jargon_pair_idx;
  if (plant_jargon) {
    for (const std::string& w : jargon) {
      jargon_single_idx.push_back(terms.size());
      terms.push_back({{w}, 0, true});
    }
    std::set<std::pair<int, int>> seen_pairs;
    while (static_cast<int>(seen_pairs.size()) < n_pairs) {
      const int a = rng.uniform_int(0, params.n_jargon_words - 1);
      const int b = rng.uniform_int(0, params.n_jargon_words - 1);
      if (a == b) continue;
      if (!seen_pairs.emplace(a, b).second) continue;
      jargon_pair_idx.push_back(terms.size());
      terms.push_back({{jargon[static_cast<std::size_t>(a)],
                        jargon[static_cast<std::size_t>(b)]},
                       0,
                       true});
    }
  }
  std::vector<std::size_t> distr_single_idx;
  std::vector<std::size_t> distr_pair_idx;
  if (plant_jargon) {
    for (const std::string& w : rare) {
      distr_single_idx.push_back(terms.size());
      terms.push_back({{w}, 0, false});
    }
    std::set<std::pair<int, int>> seen_pairs;
    while (static_cast<int>(seen_pairs.size()) < n_pairs) {
      const int a = rng.uniform_int(0, n_rare - 1);
      const int b = rng.uniform_int(0, n_rare - 1);
      if (a == b) continue;
      if (!seen_pairs.emplace(a, b).second) continue;
      distr_pair_idx.push_back(terms.size());
      terms.push_back({{rare[static_cast<std::size_t>(a)],
                        rare[static_cast<std::size_t>(b)]},
                       0,
                       false});
    }
  }
  // A few negated compounds so post-processing has something real to demote.
  std::vector<std::size_t> negation_idx;
  for (int i = 0; i < 6; ++i) {
    negation_idx.push_back(terms.size());
    terms.push_back({{i % 2 == 0 ? "no" : "not",
                      broad[static_cast<std::size_t>(rng.below(broad.size()))]},
                     rng.uniform_int(4, 10),
                     false});
  }

  // Document sizes and frequency budgets.
  std::vector<int> doc_units(static_cast<std::size_t>(params.n_docs));
  long long total_slots = 0;
  for (int& u : doc_units) {
    u = rng.uniform_int(40, 80);
    total_slots += u;
  }
  const auto budget_jargon =
      static_cast<long long>(params.jargon_fraction * static_cast<double>(total_slots));
  if (plant_jargon) {
    const auto single_tf = plan_frequencies(
        rng, static_cast<int>(jargon_single_idx.size()),
        static_cast<long long>(0.65 * static_cast<double>(budget_jargon)), 3);
    for (std::size_t i = 0; i < jargon_single_idx.size(); ++i) {
      terms[jargon_single_idx[i]].tf = single_tf[i];
    }
    const auto pair_tf = plan_frequencies(
        rng, static_cast<int>(jargon_pair_idx.size()),
        static_cast<long long>(0.35 * static_cast<double>(budget_jargon)), 3);
    for (std::size_t i = 0; i < jargon_pair_idx.size(); ++i) {
      terms[jargon_pair_idx[i]].tf = pair_tf[i];
    }
    // Distractors copy the jargon frequency profile, reshuffled, so corpus
    // statistics alone cannot tell the two groups apart.
    auto shuffled_single = single_tf;
    rng.shuffle(shuffled_single);
    for (std::size_t i = 0; i < distr_single_idx.size() && i < shuffled_single.size(); ++i) {
      terms[distr_single_idx[i]].tf = shuffled_single[i];
    }
    auto shuffled_pair = pair_tf;
    rng.shuffle(shuffled_pair);
    for (std::size_t i = 0; i < distr_pair_idx.size() && i < shuffled_pair.size(); ++i) {
      terms[distr_pair_idx[i]].tf = shuffled_pair[i];
    }
  }

  // Spread each term's occurrences over a sampled document subset.
  std::vector<std::vector<const PlantedTerm*>> doc_plan(static_cast<std::size_t>(params.n_docs));
  for (const PlantedTerm& term : terms) {
    if (term.tf <= 0) continue;
    const long long df_target = std::llround(static_cast<double>(term.tf) * rng.uniform(0.35, 0.7));
    const long long df = std::clamp<long long>(df_target, 1,
                                               std::min<long long>(term.tf, params.n_docs));
    const auto docs = rng.sample_without_replacement(static_cast<std::size_t>(params.n_docs),
                                                     static_cast<std::size_t>(df));
    for (long long occurrence = 0; occurrence < term.tf; ++occurrence) {
      doc_plan[docs[static_cast<std::size_t>(occurrence % df)]].push_back(&term);
    }
  }

  // Zipf cumulative weights for the background filler.
  std::vector<double> zipf_cum(broad.size());
  double zipf_total = 0.0;
  for (std::size_t i = 0; i < broad.size(); ++i) {
    zipf_total += 1.0 / static_cast<double>(i + 3);
    zipf_cum[i] = zipf_total;
  }

  // Emit documents; window bookkeeping runs over the same unit stream.
  std::unordered_map<std::string, long long> window_counts;
  const int id_width = 5;
  for (int d = 0; d < params.n_docs; ++d) {
    std::vector<std::vector<std::string>> units;
    for (const PlantedTerm* term : doc_plan[static_cast<std::size_t>(d)]) {
      units.push_back(term->words);
    }
    const int background =
        std::max(0, doc_units[static_cast<std::size_t>(d)] - static_cast<int>(units.size()));
    for (int i = 0; i < background; ++i) {
      const double r = rng.unit() * zipf_total;
      const auto it = std::lower_bound(zipf_cum.begin(), zipf_cum.end(), r);
      const auto idx = static_cast<std::size_t>(it - zipf_cum.begin());
      units.push_back({broad[std::min(idx, broad.size() - 1)]});
    }
    rng.shuffle(units);

    std::string text;
    for (const auto& unit : units) {
      if (!text.empty()) text += ' ';
      for (std::size_t w = 0; w < unit.size(); ++w) {
        if (w > 0) text += ' ';
        text += unit[w];
      }
      // Separator: punctuation, a stopword, or a number. Keeps adjacent
      // units from fusing into unplanned n-grams.
      const double r = rng.unit();
      if (r < 0.5) {
        text += ",.;:"[rng.below(4)];
      } else if (r < 0.8) {
        text += ' ';
        text += kSeparatorStopwords[static_cast<std::size_t>(rng.below(kSeparatorStopwords.size()))];
      } else {
        text += ' ';
        text += std::to_string(rng.uniform_int(2, 999));
        if (rng.unit() < 0.3) {
          text += '.';
          text += std::to_string(rng.uniform_int(0, 99));
        }
      }
      // Window bookkeeping (lengths 1..unit size; planted units are <= 2
      // words, so any extractor max_ngram >= 2 sees the same candidates).
      for (std::size_t start = 0; start < unit.size(); ++start) {
        std::string key;
        for (std::size_t len = 1; start + len <= unit.size(); ++len) {
          if (len > 1) key += ' ';
          key += unit[start + len - 1];
          ++window_counts[key];
        }
      }
    }
    text += '\n';

    char name[32];
    std::snprintf(name, sizeof(name), "doc%0*d.txt", id_width, d);
    std::ofstream doc_out(out_dir / "corpus" / name, std::ios::binary);
    if (!doc_out) throw std::runtime_error("cannot write synthetic document");
    doc_out << text;
  }

  SynthInfo info;
  info.n_docs = params.n_docs;
  for (const auto& [key, count] : window_counts) {
    if (count >= 1) ++info.expected_candidates_min_tf1;
    if (count >= 2) ++info.expected_candidates_min_tf2;
  }

  // Embeddings: two clusters, a couple of words dropped to exercise the
  // out-of-vocabulary path.
  std::vector<double> center_common(static_cast<std::size_t>(params.embedding_dim));
  std::vector<double> center_jargon(static_cast<std::size_t>(params.embedding_dim));
  for (int c = 0; c < params.embedding_dim; ++c) {
    center_common[static_cast<std::size_t>(c)] = rng.uniform(0.55, 0.9);
    center_jargon[static_cast<std::size_t>(c)] = rng.uniform(0.1, 0.45);
  }
  std::unordered_set<std::string> oov;
  if (params.n_jargon_words >= 8) {
    oov.insert(jargon[static_cast<std::size_t>(rng.below(jargon.size()))]);
    oov.insert(jargon[static_cast<std::size_t>(rng.below(jargon.size()))]);
  }
  oov.insert(broad[static_cast<std::size_t>(rng.below(broad.size()))]);

  std::map<std::string, std::vector<double>> embeddings;
  for (const std::string& w : common) {
    if (!oov.count(w)) embeddings.emplace(w, cluster_vector(rng, center_common, 0.08));
  }
  for (const std::string& w : {std::string("no"), std::string("not")}) {
    embeddings.emplace(w, cluster_vector(rng, center_common, 0.08));
  }
  for (const std::string& w : jargon) {
    if (!oov.count(w)) embeddings.emplace(w, cluster_vector(rng, center_jargon, 0.08));
  }
  {
    std::ofstream out(out_dir / "embeddings.txt", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write embeddings.txt");
    out << embeddings.size() << ' ' << params.embedding_dim << '\n';
    for (const auto& [word, vec] : embeddings) {
      out << word;
      for (const double v : vec) out << ' ' << format_fixed(v, 6);
      out << '\n';
    }
  }

  // Lexicon: a visible subset of the jargon (familiarity <= 0.6, with
  // semantic types), a few jargon terms rated too familiar to count, and
  // some plainly lay background words.
  std::vector<std::size_t> planted_jargon;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].jargon && terms[i].tf > 0) planted_jargon.push_back(i);
  }
  rng.shuffle(planted_jargon);
  const auto n_visible =
      static_cast<std::size_t>(std::llround(params.visible_fraction *
                                            static_cast<double>(planted_jargon.size())));
  struct Entry {
    std::string term;
    double familiarity;
    std::vector<std::string> types;
  };
  std::vector<Entry> lexicon;
  for (std::size_t i = 0; i < planted_jargon.size(); ++i) {
    const std::string key = join(terms[planted_jargon[i]].words, " ");
    if (i < n_visible) {
      Entry entry{key, rng.uniform(0.15, 0.58), {}};
      entry.types.push_back(kTypePool[static_cast<std::size_t>(rng.below(kTypePool.size()))]);
      if (rng.unit() < 0.4) {
        entry.types.push_back(kTypePool[static_cast<std::size_t>(rng.below(kTypePool.size()))]);
      }
      lexicon.push_back(std::move(entry));
      info.lexicon_visible.insert(key);
    } else if (i < n_visible + 3) {
      lexicon.push_back({key, rng.uniform(0.65, 0.8), {}});
    }
    info.gold.insert(key);
  }
  const auto lay_picks = rng.sample_without_replacement(broad.size(),
                                                        std::min<std::size_t>(25, broad.size()));
  for (std::size_t i = 0; i < lay_picks.size(); ++i) {
    Entry entry{broad[lay_picks[i]], rng.uniform(0.7, 0.95), {}};
    if (i < 5) entry.types.push_back("T170");
    lexicon.push_back(std::move(entry));
  }
  std::sort(lexicon.begin(), lexicon.end(),
            [](const Entry& a, const Entry& b) { return a.term < b.term; });
  {
    std::ofstream out(out_dir / "lexicon.tsv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write lexicon.tsv");
    out << "term\tfamiliarity\tsemantic_types\n";
    for (const Entry& entry : lexicon) {
      out << entry.term << '\t' << format_fixed(entry.familiarity, 4) << '\t';
      for (std::size_t t = 0; t < entry.types.size(); ++t) {
        if (t > 0) out << ',';
        out << entry.types[t];
      }
      out << '\n';
    }
  }

  {
    std::ofstream out(out_dir / "stopwords.txt", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write stopwords.txt");
    for (const std::string& w : kSeparatorStopwords) out << w << '\n';
  }
  {
    std::ofstream out(out_dir / "gold.txt", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write gold.txt");
    for (const std::string& key : info.gold) out << key << '\n';
  }
  {
    nlohmann::json meta;
    meta["seed"] = params.seed;
    meta["n_docs"] = params.n_docs;
    meta["n_gold"] = info.gold.size();
    meta["n_lexicon_visible"] = info.lexicon_visible.size();
    meta["expected_candidates"] = {
        {"min_tf_1", info.expected_candidates_min_tf1},
        {"min_tf_2", info.expected_candidates_min_tf2},
        {"note", "counts assume extraction with stopwords.txt and max_ngram >= 2"}};
    std::ofstream out(out_dir / "meta.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write meta.json");
    out << meta.dump(2) << '\n';
  }
  return info;
}

}  // namespace termrank
