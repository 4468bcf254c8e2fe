#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace termrank {

struct KernelSpec {
  enum class Type { rbf, linear };
  Type type = Type::rbf;
  double gamma = 0.0;  // rbf only

  double operator()(std::span<const double> a, std::span<const double> b) const;
};

struct SvmConfig {
  double c = 1.0;
  double gamma = 0.0;  // <= 0 selects 1 / feature_dimension
  KernelSpec::Type kernel = KernelSpec::Type::rbf;
  double weight_pos = 0.0;  // per-class multipliers on c; <= 0 selects n_neg / n_pos
  double weight_neg = 1.0;
  double tol = 1e-3;                             // KKT stopping tolerance
  long long max_kernel_evals = 10'000'000;       // hard cost cap, warns on hit
  std::size_t cache_bytes = 256ull << 20;        // kernel row cache budget
};

// Soft-margin SVM in dual form. Decision value f(x) = sum_i coef_i K(sv_i, x) + bias
// with coef_i = alpha_i * y_i.
struct SvmModel {
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> coef;
  std::vector<std::size_t> sv_indices;  // positions in the training set
  double bias = 0.0;
  KernelSpec kernel;
  double c = 1.0;
  double weight_pos = 1.0;
  double weight_neg = 1.0;

  bool converged = true;
  long long kernel_evals = 0;
  long long iterations = 0;
  // Dual objective sampled once per gradient-length sweep; non-decreasing.
  std::vector<double> dual_objective_trace;

  int dim() const;
  double decision_value(std::span<const double> x) const;
};

// Sequential minimal optimization with maximal-violating-pair selection.
// Deterministic: identical inputs and config give an identical model.
// Throws on single-class labels or non-finite features.
SvmModel train_svm(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                   const SvmConfig& config);

// Diagnostics over the original training set: largest margin-KKT violation
// and the equality-constraint residual |sum_i alpha_i y_i|.
double max_kkt_violation(const SvmModel& model, const std::vector<std::vector<double>>& x,
                         const std::vector<int>& y);
double sum_alpha_y(const SvmModel& model);

// Sigmoid p(f) = 1 / (1 + exp(a*f + b)) mapping decision values to
// probabilities; fitted a is negative for sane inputs so p increases with f.
struct PlattCalibration {
  double a = 0.0;
  double b = 0.0;

  double probability(double decision_value) const;
};

// Fits (a, b) by minimizing the cross-entropy against smoothed targets
// t+ = (n_pos + 1) / (n_pos + 2), t- = 1 / (n_neg + 2) with a safeguarded
// Newton method (gradient norm <= 1e-8 at convergence).
PlattCalibration platt_fit(const std::vector<double>& decision_values, const std::vector<int>& y);

// Negative log-likelihood of the targets under (a, b); exposed so fits can
// be compared against grid searches.
double platt_nll(const std::vector<double>& decision_values, const std::vector<int>& y, double a,
                 double b);

double predict_proba(const SvmModel& model, const PlattCalibration& calibration,
                     std::span<const double> x);

// L2-regularized logistic regression (natively probabilistic fallback).
struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;

  double decision_value(std::span<const double> x) const;
  double probability(std::span<const double> x) const;
};

struct LogisticConfig {
  double lambda = 1.0;  // L2 strength on weights (bias unregularized)
  double weight_pos = 1.0;
  double weight_neg = 1.0;
  int max_iter = 100;
};

LogisticModel train_logistic(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                             const LogisticConfig& config);

// Versioned text serialization of model + calibration; round-trips exactly.
struct ProbabilisticModel {
  SvmModel svm;
  PlattCalibration calibration;
};

void save_model(const std::filesystem::path& path, const ProbabilisticModel& model);
ProbabilisticModel load_model(const std::filesystem::path& path);

}  // namespace termrank
