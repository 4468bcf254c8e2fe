#include "termrank/term_extract.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "termrank/parallel.hpp"
#include "termrank/text_util.hpp"

namespace termrank {

std::string normalize_term(std::string_view surface) {
  return join(split_ws(to_lower_ascii(std::string(surface))), " ");
}

namespace {

struct DocOccurrence {
  long long count = 0;
  std::size_t first_pos = 0;  // window order of first occurrence, for surface pick
  std::string surface;
};

// Window counts for one document. Keys are enumerated in (start, length)
// order, so first_pos is well defined.
std::unordered_map<std::string, DocOccurrence> count_doc(const Document& doc, int max_ngram) {
  std::unordered_map<std::string, DocOccurrence> counts;
  const auto& toks = doc.tokens;
  std::size_t window_no = 0;
  std::size_t i = 0;
  while (i < toks.size()) {
    if (toks[i].cls != TokenClass::word) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < toks.size() && toks[run_end].cls == TokenClass::word) ++run_end;
    for (std::size_t start = i; start < run_end; ++start) {
      std::string key;
      std::string surface;
      const std::size_t max_len =
          std::min<std::size_t>(run_end - start, static_cast<std::size_t>(max_ngram));
      for (std::size_t len = 1; len <= max_len; ++len) {
        const Token& tok = toks[start + len - 1];
        if (len > 1) {
          key += ' ';
          surface += ' ';
        }
        key += tok.normalized;
        surface += tok.surface;
        auto [it, inserted] = counts.try_emplace(key);
        if (inserted) {
          it->second.first_pos = window_no;
          it->second.surface = surface;
        }
        ++it->second.count;
        ++window_no;
      }
    }
    i = run_end;
  }
  return counts;
}

}  // namespace

std::vector<CandidateTerm> extract_candidates(const std::vector<Document>& corpus, int max_ngram,
                                              int min_tf, unsigned threads) {
  if (max_ngram < 1) throw std::invalid_argument("extract_candidates: max_ngram must be >= 1");
  if (min_tf < 1) throw std::invalid_argument("extract_candidates: min_tf must be >= 1");

  std::vector<std::unordered_map<std::string, DocOccurrence>> per_doc(corpus.size());
  parallel_for(corpus.size(), threads,
               [&](std::size_t i) { per_doc[i] = count_doc(corpus[i], max_ngram); });

  // Merge in id-sorted document order; the first document (and earliest
  // window within it) that introduces a key supplies its display surface.
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return corpus[a].id < corpus[b].id; });

  std::map<std::string, CandidateTerm> merged;
  for (const std::size_t di : order) {
    const Document& doc = corpus[di];
    // Deterministic insertion: iterate this document's keys in first_pos order.
    std::vector<const std::pair<const std::string, DocOccurrence>*> items;
    items.reserve(per_doc[di].size());
    for (const auto& kv : per_doc[di]) items.push_back(&kv);
    std::sort(items.begin(), items.end(),
              [](auto* a, auto* b) { return a->second.first_pos < b->second.first_pos; });
    for (const auto* kv : items) {
      auto [it, inserted] = merged.try_emplace(kv->first);
      CandidateTerm& term = it->second;
      if (inserted) {
        term.key = kv->first;
        term.surface = kv->second.surface;
        term.tokens = split(kv->first, ' ');
        term.length = static_cast<int>(term.tokens.size());
      }
      term.tf_by_doc[doc.id] += kv->second.count;
    }
  }

  std::vector<CandidateTerm> out;
  out.reserve(merged.size());
  for (auto& [key, term] : merged) {
    term.tf_total = 0;
    for (const auto& [doc_id, tf] : term.tf_by_doc) term.tf_total += tf;
    term.df = static_cast<int>(term.tf_by_doc.size());
    if (term.tf_total >= min_tf) out.push_back(std::move(term));
  }
  return out;  // map iteration order == sorted by key
}

NestingIndex build_nesting_index(const std::vector<CandidateTerm>& candidates) {
  NestingIndex index;
  for (const CandidateTerm& term : candidates) {
    if (!index.parents.try_emplace(term.key).second) {
      throw std::invalid_argument("build_nesting_index: duplicate candidate key: " + term.key);
    }
  }
  for (const CandidateTerm& term : candidates) {
    const std::size_t len = term.tokens.size();
    if (len < 2) continue;
    for (std::size_t start = 0; start < len; ++start) {
      std::string sub;
      for (std::size_t sub_len = 1; sub_len <= len - start; ++sub_len) {
        if (sub_len > 1) sub += ' ';
        sub += term.tokens[start + sub_len - 1];
        if (sub_len == len) break;  // the full span is the term itself
        auto it = index.parents.find(sub);
        if (it != index.parents.end()) it->second.insert(term.key);
      }
    }
  }
  return index;
}

void write_candidates_tsv(const std::filesystem::path& path,
                          const std::vector<CandidateTerm>& candidates) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  out << "key\tlength\ttf_total\tdf\n";
  for (const CandidateTerm& term : candidates) {
    out << term.key << '\t' << term.length << '\t' << term.tf_total << '\t' << term.df << '\n';
  }
}

}  // namespace termrank
