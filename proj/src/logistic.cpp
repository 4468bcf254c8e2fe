#include <cmath>
#include <stdexcept>
#include <vector>

#include "termrank/classifier.hpp"

namespace termrank {

double LogisticModel::decision_value(std::span<const double> x) const {
  if (x.size() != weights.size()) {
    throw std::invalid_argument("LogisticModel: feature dimension mismatch");
  }
  double f = bias;
  for (std::size_t c = 0; c < x.size(); ++c) f += weights[c] * x[c];
  return f;
}

double LogisticModel::probability(std::span<const double> x) const {
  const double f = decision_value(x);
  if (f >= 0.0) {
    return 1.0 / (1.0 + std::exp(-f));
  }
  const double e = std::exp(f);
  return e / (1.0 + e);
}

namespace {

// In-place Gaussian elimination with partial pivoting; dimension is tiny
// (feature count + 1) so nothing fancier is warranted.
std::vector<double> solve_dense(std::vector<std::vector<double>> m, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-300) {
      throw std::runtime_error("train_logistic: singular Newton system");
    }
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = m[r][col] / m[col][col];
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) m[r][k] -= factor * m[col][k];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<double> out(n);
  for (std::size_t r = n; r-- > 0;) {
    double v = rhs[r];
    for (std::size_t k = r + 1; k < n; ++k) v -= m[r][k] * out[k];
    out[r] = v / m[r][r];
  }
  return out;
}

double objective(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                 const std::vector<double>& sample_weight, double lambda,
                 const std::vector<double>& w, double bias) {
  double value = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = bias;
    for (std::size_t c = 0; c < w.size(); ++c) f += w[c] * x[i][c];
    const double margin = static_cast<double>(y[i]) * f;
    // log(1 + exp(-margin)) without overflow
    value += sample_weight[i] *
             (margin >= 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin)));
  }
  double reg = 0.0;
  for (const double v : w) reg += v * v;
  return value + 0.5 * lambda * reg;
}

}  // namespace

LogisticModel train_logistic(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                             const LogisticConfig& config) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("train_logistic: bad input sizes");
  }
  const std::size_t dim = x.front().size();
  bool has_pos = false;
  bool has_neg = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != dim) throw std::invalid_argument("train_logistic: ragged feature matrix");
    for (const double v : x[i]) {
      if (!std::isfinite(v)) throw std::invalid_argument("train_logistic: non-finite feature");
    }
    if (y[i] == 1) has_pos = true;
    else if (y[i] == -1) has_neg = true;
    else throw std::invalid_argument("train_logistic: labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("train_logistic: training data must contain both classes");
  }
  if (config.lambda < 0.0) throw std::invalid_argument("train_logistic: lambda must be >= 0");

  std::vector<double> sample_weight(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sample_weight[i] = y[i] > 0 ? config.weight_pos : config.weight_neg;
  }

  std::vector<double> w(dim, 0.0);
  double bias = 0.0;
  double fval = objective(x, y, sample_weight, config.lambda, w, bias);

  for (int iter = 0; iter < config.max_iter; ++iter) {
    // Gradient and Hessian of the weighted NLL + ridge (bias unregularized);
    // the bias is the last coordinate of the augmented system.
    std::vector<double> grad(dim + 1, 0.0);
    std::vector<std::vector<double>> hess(dim + 1, std::vector<double>(dim + 1, 0.0));
    for (std::size_t i = 0; i < x.size(); ++i) {
      double f = bias;
      for (std::size_t c = 0; c < dim; ++c) f += w[c] * x[i][c];
      double p;  // sigmoid(f)
      if (f >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-f));
      } else {
        const double e = std::exp(f);
        p = e / (1.0 + e);
      }
      const double target = y[i] > 0 ? 1.0 : 0.0;
      const double residual = sample_weight[i] * (p - target);
      const double curvature = sample_weight[i] * p * (1.0 - p);
      for (std::size_t c = 0; c < dim; ++c) grad[c] += residual * x[i][c];
      grad[dim] += residual;
      for (std::size_t r = 0; r < dim; ++r) {
        const double xr = curvature * x[i][r];
        for (std::size_t c = r; c < dim; ++c) hess[r][c] += xr * x[i][c];
        hess[r][dim] += xr;
      }
      hess[dim][dim] += curvature;
    }
    for (std::size_t c = 0; c < dim; ++c) {
      grad[c] += config.lambda * w[c];
      hess[c][c] += config.lambda;
    }
    for (std::size_t r = 0; r < dim + 1; ++r) {
      for (std::size_t c = 0; c < r; ++c) hess[r][c] = hess[c][r];
    }

    double gnorm = 0.0;
    for (const double g : grad) gnorm = std::max(gnorm, std::abs(g));
    if (gnorm <= 1e-8) break;

    std::vector<double> neg_grad(dim + 1);
    for (std::size_t c = 0; c < dim + 1; ++c) neg_grad[c] = -grad[c];
    const std::vector<double> direction = solve_dense(hess, neg_grad);

    double gd = 0.0;
    for (std::size_t c = 0; c < dim + 1; ++c) gd += grad[c] * direction[c];

    double step = 1.0;
    bool accepted = false;
    while (step >= 1e-10) {
      std::vector<double> new_w(dim);
      for (std::size_t c = 0; c < dim; ++c) new_w[c] = w[c] + step * direction[c];
      const double new_bias = bias + step * direction[dim];
      const double new_f = objective(x, y, sample_weight, config.lambda, new_w, new_bias);
      if (new_f <= fval + 1e-4 * step * gd) {
        w = std::move(new_w);
        bias = new_bias;
        fval = new_f;
        accepted = true;
        break;
      }
      step /= 2.0;
    }
    if (!accepted) break;
  }

  LogisticModel model;
  model.weights = std::move(w);
  model.bias = bias;
  return model;
}

}  // namespace termrank
