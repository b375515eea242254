#pragma once

#include "abci/types.hpp"

namespace abci {

struct PcaProjection {
  std::vector<double> mean;                          // column means, length d
  std::vector<std::vector<double>> components;       // [k][d], orthonormal rows
  std::vector<double> explained_variance;            // nonincreasing, length k
  double variance_fraction = 0.0;

  std::size_t input_dim() const { return mean.size(); }
  std::size_t output_dim() const { return components.size(); }
};

// Mean-center columns, eigendecompose the covariance, keep the smallest
// number of components whose cumulative explained variance reaches
// variance_fraction, and project.
std::pair<PcaProjection, FeatureMatrix> pca_fit_transform(const FeatureMatrix& features,
                                                          double variance_fraction);

// Project new rows with an already-fitted projection.
FeatureMatrix pca_transform(const PcaProjection& projection, const FeatureMatrix& features);

std::vector<double> pca_transform_row(const PcaProjection& projection,
                                      const std::vector<double>& row);

}  // namespace abci
