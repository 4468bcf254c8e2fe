#include <cmath>
#include <stdexcept>
#include <vector>

#include "termrank/classifier.hpp"

namespace termrank {

double PlattCalibration::probability(double decision_value) const {
  const double z = a * decision_value + b;
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

namespace {

// Cross-entropy of smoothed targets under the sigmoid, evaluated without
// overflow for either sign of z.
double nll_with_targets(const std::vector<double>& decision_values,
                        const std::vector<double>& targets, double a, double b) {
  double value = 0.0;
  for (std::size_t i = 0; i < decision_values.size(); ++i) {
    const double z = a * decision_values[i] + b;
    const double t = targets[i];
    if (z >= 0.0) {
      value += t * z + std::log1p(std::exp(-z));
    } else {
      value += (t - 1.0) * z + std::log1p(std::exp(z));
    }
  }
  return value;
}

std::vector<double> smoothed_targets(const std::vector<int>& y, std::size_t& n_pos,
                                     std::size_t& n_neg) {
  n_pos = 0;
  n_neg = 0;
  for (const int label : y) {
    if (label == 1) {
      ++n_pos;
    } else if (label == -1) {
      ++n_neg;
    } else {
      throw std::invalid_argument("platt_fit: labels must be +1 or -1");
    }
  }
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("platt_fit: both classes must be present");
  }
  const double hi = (static_cast<double>(n_pos) + 1.0) / (static_cast<double>(n_pos) + 2.0);
  const double lo = 1.0 / (static_cast<double>(n_neg) + 2.0);
  std::vector<double> targets(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) targets[i] = y[i] == 1 ? hi : lo;
  return targets;
}

}  // namespace

double platt_nll(const std::vector<double>& decision_values, const std::vector<int>& y, double a,
                 double b) {
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  const auto targets = smoothed_targets(y, n_pos, n_neg);
  return nll_with_targets(decision_values, targets, a, b);
}

PlattCalibration platt_fit(const std::vector<double>& decision_values,
                           const std::vector<int>& y) {
  if (decision_values.size() != y.size()) {
    throw std::invalid_argument("platt_fit: |decision_values| != |y|");
  }
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  const auto targets = smoothed_targets(y, n_pos, n_neg);

  // Safeguarded Newton on the two-parameter cross-entropy (the standard
  // refinement of Platt's original fit).
  constexpr int max_iter = 200;
  constexpr double min_step = 1e-10;
  constexpr double sigma = 1e-12;  // Hessian ridge
  constexpr double grad_eps = 1e-8;

  double a = 0.0;
  double b = std::log((static_cast<double>(n_neg) + 1.0) / (static_cast<double>(n_pos) + 1.0));
  double fval = nll_with_targets(decision_values, targets, a, b);

  for (int iter = 0; iter < max_iter; ++iter) {
    double h11 = sigma;
    double h22 = sigma;
    double h21 = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    for (std::size_t i = 0; i < decision_values.size(); ++i) {
      const double z = a * decision_values[i] + b;
      double p;
      double q;
      if (z >= 0.0) {
        const double e = std::exp(-z);
        p = e / (1.0 + e);
        q = 1.0 / (1.0 + e);
      } else {
        const double e = std::exp(z);
        p = 1.0 / (1.0 + e);
        q = e / (1.0 + e);
      }
      const double d2 = p * q;
      h11 += decision_values[i] * decision_values[i] * d2;
      h22 += d2;
      h21 += decision_values[i] * d2;
      const double d1 = targets[i] - p;
      g1 += decision_values[i] * d1;
      g2 += d1;
    }
    if (std::sqrt(g1 * g1 + g2 * g2) <= grad_eps) break;

    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;

    double step = 1.0;
    bool accepted = false;
    while (step >= min_step) {
      const double new_a = a + step * da;
      const double new_b = b + step * db;
      const double new_f = nll_with_targets(decision_values, targets, new_a, new_b);
      if (new_f < fval + 1e-4 * step * gd) {
        a = new_a;
        b = new_b;
        fval = new_f;
        accepted = true;
        break;
      }
      step /= 2.0;
    }
    if (!accepted) break;  // line search exhausted; current point is the answer
  }

  PlattCalibration calibration;
  calibration.a = a;
  calibration.b = b;
  return calibration;
}

}  // namespace termrank
