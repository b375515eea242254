#pragma once

#include "abci/dataset.hpp"

namespace abci {

// Gaussian-kernel soft-margin SVM trained by SMO on z-scored features.
struct SvmModel {
  std::vector<std::vector<double>> support_vectors;  // already scaled
  std::vector<double> dual_coefficients;             // alpha_i * y_i
  double bias = 0.0;
  double kernel_gamma = 0.0;
  Scaler scaler;
};

struct SvmTrainStats {
  int iterations = 0;
  double max_kkt_violation = 0.0;
  double dual_constraint_residual = 0.0;  // |sum alpha_i y_i|
};

// Solves the soft-margin dual with maximal-violating-pair SMO; KKT tolerance
// 1e-3. Requires both classes present.
SvmModel svm_train(const LabeledDataset& train, double C, double gamma,
                   SvmTrainStats* stats = nullptr);

double svm_decision(const SvmModel& model, const std::vector<double>& x);

// sign of the decision function mapped {-1 -> 0, +1 -> 1}; exact 0 maps to 1.
int svm_predict(const SvmModel& model, const std::vector<double>& x);

}  // namespace abci
