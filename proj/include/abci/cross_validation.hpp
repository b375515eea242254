#pragma once

#include "abci/dataset.hpp"

#include <cstdint>
#include <optional>

namespace abci {

enum class CvKind { leave_one_out, k_fold };

struct CvScheme {
  CvKind kind = CvKind::leave_one_out;
  int k = 10;            // for k_fold
  std::uint64_t seed = 0;
};

struct ClassifierDescriptor {
  std::string type = "svm";  // "svm" | "knn"
  double C = 0.0;            // <= 0: grid-selected per unit
  double gamma = 0.0;        // <= 0: grid-selected per unit
  int k = 9;                 // kNN neighbor count
  std::uint64_t seed = 0;

  std::string to_string() const;
};

struct PredictionSet {
  std::vector<std::string> trial_ids;
  std::vector<int> true_labels;
  std::vector<int> predicted_labels;
  std::vector<int> fold_assignments;
  std::string classifier_descriptor;
  std::vector<std::string> flags;  // degenerate folds etc.
};

// Disjoint, exhaustive folds; k_fold uses a seeded permutation split as
// evenly as possible. Returns fold index per trial.
std::vector<int> make_folds(std::size_t n, const CvScheme& scheme);

// Per fold: scaler (and PCA when pca_variance_fraction is set) fit on the
// training rows only. A training fold with a single class falls back to
// majority-vote prediction and is flagged rather than aborting.
PredictionSet cross_validate(const LabeledDataset& data, const CvScheme& scheme,
                             const ClassifierDescriptor& classifier,
                             std::optional<double> pca_variance_fraction = std::nullopt);

struct ParameterGrid {
  std::vector<double> C = {0.1, 1.0, 10.0, 100.0};
  std::vector<double> gamma_times_d = {0.01, 0.1, 1.0, 10.0};  // divided by feature dim
};

struct SvmParams {
  double C;
  double gamma;
  double holdout_balanced_accuracy;
};

// Stratified random holdout of the given fraction; picks the grid point
// maximizing holdout balanced accuracy (ties: smaller C, then smaller gamma).
SvmParams select_hyperparameters(const LabeledDataset& data, const ParameterGrid& grid,
                                 double holdout_fraction, std::uint64_t seed);

}  // namespace abci
