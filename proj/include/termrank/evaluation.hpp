#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "termrank/pu_rank.hpp"

namespace termrank {

// Binary gold labels covering every evaluated term (true = positive).
struct GoldLabels {
  std::map<std::string, bool> labels;

  // Every term in `universe` gets a label: positive iff it is in `positives`.
  static GoldLabels from_positives(const std::set<std::string>& positives,
                                   const std::vector<std::string>& universe);
};

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

enum class CurveKind { roc, pu };

struct CurveSeries {
  CurveKind kind = CurveKind::roc;
  std::vector<CurvePoint> points;
};

struct RocResult {
  CurveSeries curve;
  double auc = 0.0;
};

// ROC over all score thresholds with tied scores collapsed into single steps;
// the trapezoidal area equals the Mann-Whitney statistic with half credit for
// ties. Gold must label every scored term and contain both classes.
RocResult roc_auc(const std::map<std::string, double>& scores, const GoldLabels& gold);

// Score proxy for evaluating a stored ranking by its rank order. Raw scores
// do not order a post-processed list (demotion moves terms without rewriting
// scores), so each term scores the negation of its rank.
std::map<std::string, double> rank_order_scores(const RankedList& ranking);

// Positive-unlabeled ranking quality r(k)^2 / Pr[system positive] evaluated
// at each rank k (or every `stride`-th rank plus the final one; thinning only
// affects which points are emitted, not their values).
CurveSeries pu_curve(const RankedList& ranking, const std::set<std::string>& labeled_positives,
                     std::size_t stride = 1);

// CSV with header "x,y" (roc) or "k,pu"; 6-decimal values, k as an integer.
void export_curve(const CurveSeries& series, const std::filesystem::path& path);

struct PuPeak {
  double pu = 0.0;
  long long k = 0;
};

PuPeak peak_of(const CurveSeries& pu_series);

// {"auc": ..., "peak_pu": ..., "peak_k": ...}
void write_summary_json(const std::filesystem::path& path, double auc, const PuPeak& peak);

}  // namespace termrank
