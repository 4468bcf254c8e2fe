#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <list>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "termrank/classifier.hpp"

namespace termrank {

double KernelSpec::operator()(std::span<const double> a, std::span<const double> b) const {
  if (type == Type::linear) {
    double dot = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) dot += a[c] * b[c];
    return dot;
  }
  double dist2 = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    dist2 += diff * diff;
  }
  return std::exp(-gamma * dist2);
}

int SvmModel::dim() const {
  return support_vectors.empty() ? 0 : static_cast<int>(support_vectors.front().size());
}

double SvmModel::decision_value(std::span<const double> x) const {
  if (!support_vectors.empty() && x.size() != support_vectors.front().size()) {
    throw std::invalid_argument("SvmModel: feature dimension mismatch");
  }
  double f = bias;
  for (std::size_t i = 0; i < support_vectors.size(); ++i) {
    f += coef[i] * kernel(support_vectors[i], x);
  }
  return f;
}

namespace {

constexpr double kTau = 1e-12;

// LRU cache of kernel matrix rows, bounded by a byte budget. Row i holds
// K(x_i, x_j) for all j; evaluations are counted once per computed entry.
class KernelCache {
 public:
  KernelCache(const std::vector<std::vector<double>>& x, const KernelSpec& kernel,
              std::size_t budget_bytes)
      : x_(x), kernel_(kernel), n_(x.size()) {
    max_rows_ = std::max<std::size_t>(2, budget_bytes / (n_ * sizeof(double)));
  }

  const std::vector<double>& row(std::size_t i) {
    auto it = rows_.find(i);
    if (it != rows_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.slot);
      return it->second.values;
    }
    if (rows_.size() >= max_rows_) {
      const std::size_t victim = lru_.back();
      lru_.pop_back();
      rows_.erase(victim);
    }
    Entry entry;
    entry.values.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) entry.values[j] = kernel_(x_[i], x_[j]);
    evals_ += static_cast<long long>(n_);
    lru_.push_front(i);
    entry.slot = lru_.begin();
    return rows_.emplace(i, std::move(entry)).first->second.values;
  }

  long long evals() const { return evals_; }

 private:
  struct Entry {
    std::list<std::size_t>::iterator slot;
    std::vector<double> values;
  };

  const std::vector<std::vector<double>>& x_;
  const KernelSpec& kernel_;
  std::size_t n_;
  std::size_t max_rows_;
  long long evals_ = 0;
  std::list<std::size_t> lru_;
  std::unordered_map<std::size_t, Entry> rows_;
};

// Dual problem in LibSVM form: minimize 1/2 a'Qa - e'a with Q_ij = y_i y_j K_ij,
// subject to y'a = 0 and 0 <= a_i <= C_i. The gradient G = Qa - e is kept
// incrementally; the maximal-violating pair drives both selection and the
// stopping rule max_{I_up}(-yG) - min_{I_low}(-yG) <= tol.
class SmoSolver {
 public:
  SmoSolver(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
            const KernelSpec& kernel, const std::vector<double>& c_bound, double tol,
            long long max_kernel_evals, std::size_t cache_bytes)
      : x_(x),
        y_(y),
        c_(c_bound),
        tol_(tol),
        max_kernel_evals_(max_kernel_evals),
        cache_(x, kernel, cache_bytes),
        n_(x.size()) {
    alpha_.assign(n_, 0.0);
    grad_.assign(n_, -1.0);
    diag_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) diag_[i] = kernel(x_[i], x_[i]);
  }

  void solve() {
    const long long record_every = static_cast<long long>(std::max<std::size_t>(n_, 1));
    trace_.push_back(dual_objective());
    while (true) {
      if (cache_.evals() >= max_kernel_evals_) {
        converged_ = false;
        std::cerr << "termrank: SMO stopped at the kernel-evaluation cap ("
                  << max_kernel_evals_ << "); model may not satisfy KKT tolerance\n";
        break;
      }
      auto [i, j, gap] = select_working_set();
      if (gap <= tol_) break;
      update_pair(i, j);
      ++iterations_;
      if (iterations_ % record_every == 0) trace_.push_back(dual_objective());
    }
    trace_.push_back(dual_objective());
  }

  // (i in I_up, j in I_low, violation gap). Ties resolve to the lowest index.
  std::tuple<std::size_t, std::size_t, double> select_working_set() const {
    double m_val = -std::numeric_limits<double>::infinity();
    double big_m_val = std::numeric_limits<double>::infinity();
    std::size_t i = n_;
    std::size_t j = n_;
    for (std::size_t t = 0; t < n_; ++t) {
      const double neg_yg = -static_cast<double>(y_[t]) * grad_[t];
      if (in_up(t) && neg_yg > m_val) {
        m_val = neg_yg;
        i = t;
      }
      if (in_low(t) && neg_yg < big_m_val) {
        big_m_val = neg_yg;
        j = t;
      }
    }
    return {i, j, m_val - big_m_val};
  }

  void update_pair(std::size_t i, std::size_t j) {
    const std::vector<double>& ki = cache_.row(i);
    const std::vector<double>& kj = cache_.row(j);
    const double old_ai = alpha_[i];
    const double old_aj = alpha_[j];
    const double ci = c_[i];
    const double cj = c_[j];

    // Curvature along the feasible pair direction is ||phi(x_i) - phi(x_j)||^2
    // for either label combination.
    if (y_[i] != y_[j]) {
      double quad = diag_[i] + diag_[j] - 2.0 * ki[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = alpha_[i] - alpha_[j];
      alpha_[i] += delta;
      alpha_[j] += delta;
      if (diff > 0.0) {
        if (alpha_[j] < 0.0) {
          alpha_[j] = 0.0;
          alpha_[i] = diff;
        }
      } else {
        if (alpha_[i] < 0.0) {
          alpha_[i] = 0.0;
          alpha_[j] = -diff;
        }
      }
      if (diff > ci - cj) {
        if (alpha_[i] > ci) {
          alpha_[i] = ci;
          alpha_[j] = ci - diff;
        }
      } else {
        if (alpha_[j] > cj) {
          alpha_[j] = cj;
          alpha_[i] = cj + diff;
        }
      }
    } else {
      double quad = diag_[i] + diag_[j] - 2.0 * ki[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = alpha_[i] + alpha_[j];
      alpha_[i] -= delta;
      alpha_[j] += delta;
      if (sum > ci) {
        if (alpha_[i] > ci) {
          alpha_[i] = ci;
          alpha_[j] = sum - ci;
        }
      } else {
        if (alpha_[j] < 0.0) {
          alpha_[j] = 0.0;
          alpha_[i] = sum;
        }
      }
      if (sum > cj) {
        if (alpha_[j] > cj) {
          alpha_[j] = cj;
          alpha_[i] = sum - cj;
        }
      } else {
        if (alpha_[i] < 0.0) {
          alpha_[i] = 0.0;
          alpha_[j] = sum;
        }
      }
    }

    const double delta_ai = alpha_[i] - old_ai;
    const double delta_aj = alpha_[j] - old_aj;
    const double yi = y_[i];
    const double yj = y_[j];
    for (std::size_t t = 0; t < n_; ++t) {
      grad_[t] += static_cast<double>(y_[t]) * (yi * ki[t] * delta_ai + yj * kj[t] * delta_aj);
    }
  }

  // Maximization-form dual value -f(a) = sum(a) - 1/2 a'Qa, derived from the
  // maintained gradient: 1/2 * sum_i a_i (1 - G_i).
  double dual_objective() const {
    double v = 0.0;
    for (std::size_t t = 0; t < n_; ++t) v += alpha_[t] * (1.0 - grad_[t]);
    return 0.5 * v;
  }

  double compute_bias() const {
    double m_val = -std::numeric_limits<double>::infinity();
    double big_m_val = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n_; ++t) {
      const double neg_yg = -static_cast<double>(y_[t]) * grad_[t];
      if (in_up(t)) m_val = std::max(m_val, neg_yg);
      if (in_low(t)) big_m_val = std::min(big_m_val, neg_yg);
    }
    return 0.5 * (m_val + big_m_val);
  }

  const std::vector<double>& alpha() const { return alpha_; }
  bool converged() const { return converged_; }
  long long iterations() const { return iterations_; }
  long long kernel_evals() const { return cache_.evals(); }
  std::vector<double> take_trace() { return std::move(trace_); }

 private:
  bool in_up(std::size_t t) const {
    return y_[t] > 0 ? alpha_[t] < c_[t] : alpha_[t] > 0.0;
  }
  bool in_low(std::size_t t) const {
    return y_[t] > 0 ? alpha_[t] > 0.0 : alpha_[t] < c_[t];
  }

  const std::vector<std::vector<double>>& x_;
  const std::vector<int>& y_;
  const std::vector<double>& c_;
  double tol_;
  long long max_kernel_evals_;
  mutable KernelCache cache_;
  std::size_t n_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
  std::vector<double> diag_;
  std::vector<double> trace_;
  bool converged_ = true;
  long long iterations_ = 0;
};

void validate_training_input(const std::vector<std::vector<double>>& x,
                             const std::vector<int>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("train_svm: |x| != |y|");
  if (x.size() < 2) throw std::invalid_argument("train_svm: need at least 2 examples");
  const std::size_t dim = x.front().size();
  if (dim == 0) throw std::invalid_argument("train_svm: empty feature vectors");
  bool has_pos = false;
  bool has_neg = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != dim) throw std::invalid_argument("train_svm: ragged feature matrix");
    for (const double v : x[i]) {
      if (!std::isfinite(v)) throw std::invalid_argument("train_svm: non-finite feature value");
    }
    if (y[i] == 1) {
      has_pos = true;
    } else if (y[i] == -1) {
      has_neg = true;
    } else {
      throw std::invalid_argument("train_svm: labels must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("train_svm: training data must contain both classes");
  }
}

}  // namespace

SvmModel train_svm(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                   const SvmConfig& config) {
  validate_training_input(x, y);
  if (config.c <= 0.0) throw std::invalid_argument("train_svm: C must be positive");
  if (config.weight_neg <= 0.0) {
    throw std::invalid_argument("train_svm: weight_neg must be positive");
  }
  double weight_pos = config.weight_pos;
  if (weight_pos <= 0.0) {
    long long n_pos = 0;
    for (const int label : y) n_pos += label > 0 ? 1 : 0;
    weight_pos = static_cast<double>(static_cast<long long>(y.size()) - n_pos) /
                 static_cast<double>(n_pos);
  }

  KernelSpec kernel;
  kernel.type = config.kernel;
  kernel.gamma = config.gamma > 0.0 ? config.gamma : 1.0 / static_cast<double>(x.front().size());

  std::vector<double> c_bound(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    c_bound[i] = config.c * (y[i] > 0 ? weight_pos : config.weight_neg);
  }

  SmoSolver solver(x, y, kernel, c_bound, config.tol, config.max_kernel_evals,
                   config.cache_bytes);
  solver.solve();

  SvmModel model;
  model.kernel = kernel;
  model.c = config.c;
  model.weight_pos = weight_pos;
  model.weight_neg = config.weight_neg;
  model.bias = solver.compute_bias();
  model.converged = solver.converged();
  model.iterations = solver.iterations();
  model.kernel_evals = solver.kernel_evals();
  model.dual_objective_trace = solver.take_trace();
  const std::vector<double>& alpha = solver.alpha();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (alpha[i] > 0.0) {
      model.support_vectors.push_back(x[i]);
      model.coef.push_back(alpha[i] * static_cast<double>(y[i]));
      model.sv_indices.push_back(i);
    }
  }
  return model;
}

double max_kkt_violation(const SvmModel& model, const std::vector<std::vector<double>>& x,
                         const std::vector<int>& y) {
  std::vector<double> alpha(x.size(), 0.0);
  for (std::size_t s = 0; s < model.sv_indices.size(); ++s) {
    const std::size_t i = model.sv_indices[s];
    if (i >= x.size()) throw std::invalid_argument("max_kkt_violation: sv index out of range");
    alpha[i] = model.coef[s] * static_cast<double>(y[i]);  // coef = alpha * y, y^2 = 1
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double margin = static_cast<double>(y[i]) * model.decision_value(x[i]);
    const double bound = model.c * (y[i] > 0 ? model.weight_pos : model.weight_neg);
    double violation = 0.0;
    if (alpha[i] <= 0.0) {
      violation = std::max(0.0, 1.0 - margin);
    } else if (alpha[i] >= bound) {
      violation = std::max(0.0, margin - 1.0);
    } else {
      violation = std::abs(1.0 - margin);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

double sum_alpha_y(const SvmModel& model) {
  double sum = 0.0;
  for (const double c : model.coef) sum += c;
  return sum;
}

double predict_proba(const SvmModel& model, const PlattCalibration& calibration,
                     std::span<const double> x) {
  return calibration.probability(model.decision_value(x));
}

}  // namespace termrank
