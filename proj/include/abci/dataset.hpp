#pragma once

#include "abci/types.hpp"

namespace abci {

enum class Dimension { valence, arousal, dominance };

const char* dimension_name(Dimension d);
Dimension parse_dimension(const std::string& name);

struct LabeledDataset {
  FeatureMatrix features;
  std::vector<int> labels;  // 0 = low, 1 = high
  Dimension dimension = Dimension::valence;

  std::size_t size() const { return labels.size(); }
};

// label = 1 iff rating >= split. Ratings must lie in [1, scale_max].
std::vector<int> threshold_labels(const std::vector<double>& ratings, int scale_max,
                                  double split);

// Per-feature z-scoring; zero-variance features pass through unscaled.
struct Scaler {
  std::vector<double> mean;
  std::vector<double> stddev;  // 1.0 where the feature had zero variance

  static Scaler fit(const std::vector<std::vector<double>>& rows);
  std::vector<double> apply(const std::vector<double>& row) const;
  std::vector<std::vector<double>> apply_all(const std::vector<std::vector<double>>& rows) const;
};

}  // namespace abci
