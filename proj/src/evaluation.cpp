#include "termrank/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "termrank/text_util.hpp"

namespace termrank {

GoldLabels GoldLabels::from_positives(const std::set<std::string>& positives,
                                      const std::vector<std::string>& universe) {
  GoldLabels gold;
  for (const std::string& key : universe) {
    gold.labels[key] = positives.count(key) > 0;
  }
  return gold;
}

std::map<std::string, double> rank_order_scores(const RankedList& ranking) {
  std::map<std::string, double> scores;
  for (const RankRecord& record : ranking.records) {
    scores.emplace(record.key, -static_cast<double>(record.rank));
  }
  return scores;
}

RocResult roc_auc(const std::map<std::string, double>& scores, const GoldLabels& gold) {
  std::vector<std::pair<double, bool>> items;
  items.reserve(scores.size());
  long long n_pos = 0;
  long long n_neg = 0;
  for (const auto& [key, score] : scores) {
    auto it = gold.labels.find(key);
    if (it == gold.labels.end()) {
      throw std::invalid_argument("roc_auc: gold labels must cover every evaluated term ('" +
                                  key + "' is unlabeled)");
    }
    items.emplace_back(score, it->second);
    (it->second ? n_pos : n_neg) += 1;
  }
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument(
        "roc_auc: gold labels must contain at least one positive and one negative");
  }

  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  RocResult result;
  result.curve.kind = CurveKind::roc;
  result.curve.points.push_back({0.0, 0.0});

  long long tp = 0;
  long long fp = 0;
  double auc = 0.0;
  double prev_fpr = 0.0;
  double prev_tpr = 0.0;
  std::size_t i = 0;
  while (i < items.size()) {
    // One threshold step per distinct score; ties advance tp and fp together,
    // which traces the tie block as a single diagonal segment.
    const double threshold = items[i].first;
    while (i < items.size() && items[i].first == threshold) {
      (items[i].second ? tp : fp) += 1;
      ++i;
    }
    const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
    const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
    auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    result.curve.points.push_back({fpr, tpr});
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  result.auc = auc;
  return result;
}

CurveSeries pu_curve(const RankedList& ranking, const std::set<std::string>& labeled_positives,
                     std::size_t stride) {
  if (ranking.records.empty()) throw std::invalid_argument("pu_curve: empty ranking");
  if (labeled_positives.empty()) throw std::invalid_argument("pu_curve: empty positive set");
  if (stride == 0) stride = 1;

  const std::size_t n = ranking.records.size();
  CurveSeries series;
  series.kind = CurveKind::pu;
  long long hits = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (labeled_positives.count(ranking.records[k - 1].key)) ++hits;
    if (k % stride != 0 && k != n) continue;
    const double recall =
        static_cast<double>(hits) / static_cast<double>(labeled_positives.size());
    const double pr_system_positive = static_cast<double>(k) / static_cast<double>(n);
    series.points.push_back({static_cast<double>(k), recall * recall / pr_system_positive});
  }
  return series;
}

void export_curve(const CurveSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write curve: " + path.string());
  if (series.kind == CurveKind::roc) {
    out << "x,y\n";
    for (const CurvePoint& p : series.points) {
      out << format_fixed(p.x, 6) << ',' << format_fixed(p.y, 6) << '\n';
    }
  } else {
    out << "k,pu\n";
    for (const CurvePoint& p : series.points) {
      out << static_cast<long long>(p.x) << ',' << format_fixed(p.y, 6) << '\n';
    }
  }
}

PuPeak peak_of(const CurveSeries& pu_series) {
  PuPeak peak;
  for (const CurvePoint& p : pu_series.points) {
    if (p.y > peak.pu) {
      peak.pu = p.y;
      peak.k = static_cast<long long>(p.x);
    }
  }
  return peak;
}

void write_summary_json(const std::filesystem::path& path, double auc, const PuPeak& peak) {
  nlohmann::json summary;
  summary["auc"] = auc;
  summary["peak_pu"] = peak.pu;
  summary["peak_k"] = peak.k;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write summary: " + path.string());
  out << summary.dump(2) << '\n';
}

}  // namespace termrank
