#include "abci/svm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace abci {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    d += diff * diff;
  }
  return d;
}

constexpr double kKktTolerance = 1e-3;
constexpr double kTau = 1e-12;

}  // namespace

SvmModel svm_train(const LabeledDataset& train, double C, double gamma, SvmTrainStats* stats) {
  const std::size_t n = train.size();
  if (n < 2) throw std::invalid_argument("svm_train: need >= 2 training points");
  if (C <= 0.0 || gamma <= 0.0) throw std::invalid_argument("svm_train: C and gamma must be > 0");
  if (train.features.rows.size() != n)
    throw std::invalid_argument("svm_train: feature/label count mismatch");

  bool has0 = false, has1 = false;
  for (int l : train.labels) (l == 0 ? has0 : has1) = true;
  if (!has0 || !has1) throw std::invalid_argument("svm_train: single-class training set");

  for (const auto& row : train.features.rows)
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("svm_train: non-finite features");

  const Scaler scaler = Scaler::fit(train.features.rows);
  const auto x = scaler.apply_all(train.features.rows);

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = train.labels[i] == 1 ? 1.0 : -1.0;

  // Kernel matrix; trial counts here are small (tens to hundreds).
  std::vector<std::vector<double>> kmat(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      kmat[i][j] = kmat[j][i] = std::exp(-gamma * squared_distance(x[i], x[j]));

  auto q = [&](std::size_t i, std::size_t j) { return y[i] * y[j] * kmat[i][j]; };

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // G_i = (Q alpha)_i - 1

  const std::size_t max_iter = std::max<std::size_t>(10000, 10 * n * n);
  std::size_t iter = 0;
  double gap = std::numeric_limits<double>::infinity();

  while (iter < max_iter) {
    // Maximal-violating pair.
    double up_val = -std::numeric_limits<double>::infinity();
    double low_val = std::numeric_limits<double>::infinity();
    std::size_t i_up = n, j_low = n;
    for (std::size_t t = 0; t < n; ++t) {
      const bool in_up = (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0);
      const bool in_low = (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < C);
      const double v = -y[t] * grad[t];
      if (in_up && v > up_val) {
        up_val = v;
        i_up = t;
      }
      if (in_low && v < low_val) {
        low_val = v;
        j_low = t;
      }
    }
    gap = up_val - low_val;
    if (i_up == n || j_low == n || gap <= kKktTolerance) break;

    const std::size_t i = i_up, j = j_low;
    const double old_ai = alpha[i], old_aj = alpha[j];

    if (y[i] != y[j]) {
      double quad = kmat[i][i] + kmat[j][j] + 2.0 * kmat[i][j] * y[i] * y[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = diff; }
      } else {
        if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = -diff; }
      }
      if (diff > 0.0) {
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = C - diff; }
      } else {
        if (alpha[j] > C) { alpha[j] = C; alpha[i] = C + diff; }
      }
    } else {
      double quad = kmat[i][i] + kmat[j][j] - 2.0 * kmat[i][j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = sum - C; }
        if (alpha[j] > C) { alpha[j] = C; alpha[i] = sum - C; }
      } else {
        if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = sum; }
        if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = sum; }
      }
    }

    const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * dai + q(t, j) * daj;
    ++iter;
  }

  // Bias from free support vectors; midpoint of the violation bounds otherwise.
  double bias_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > kTau && alpha[t] < C - kTau) {
      bias_sum += -y[t] * grad[t];
      ++free_count;
    }
  }
  double bias;
  if (free_count > 0) {
    bias = bias_sum / static_cast<double>(free_count);
  } else {
    double up_val = -std::numeric_limits<double>::infinity();
    double low_val = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const bool in_up = (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0);
      const bool in_low = (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < C);
      const double v = -y[t] * grad[t];
      if (in_up) up_val = std::max(up_val, v);
      if (in_low) low_val = std::min(low_val, v);
    }
    bias = (up_val + low_val) / 2.0;
  }

  SvmModel model;
  model.kernel_gamma = gamma;
  model.scaler = scaler;
  model.bias = bias;
  double residual = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    residual += alpha[t] * y[t];
    if (alpha[t] > kTau) {
      model.support_vectors.push_back(x[t]);
      model.dual_coefficients.push_back(alpha[t] * y[t]);
    }
  }
  if (stats) {
    stats->iterations = static_cast<int>(iter);
    stats->max_kkt_violation = gap;
    stats->dual_constraint_residual = std::fabs(residual);
  }
  return model;
}

double svm_decision(const SvmModel& model, const std::vector<double>& x) {
  if (!model.support_vectors.empty() && x.size() != model.support_vectors[0].size())
    throw std::invalid_argument("svm_decision: dimension mismatch");
  const auto xs = model.scaler.apply(x);
  double f = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i)
    f += model.dual_coefficients[i] *
         std::exp(-model.kernel_gamma * squared_distance(model.support_vectors[i], xs));
  return f;
}

int svm_predict(const SvmModel& model, const std::vector<double>& x) {
  return svm_decision(model, x) >= 0.0 ? 1 : 0;
}

}  // namespace abci
