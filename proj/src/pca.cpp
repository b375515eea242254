#include "abci/pca.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace abci {

std::pair<PcaProjection, FeatureMatrix> pca_fit_transform(const FeatureMatrix& features,
                                                          double variance_fraction) {
  const std::size_t n = features.row_count();
  const std::size_t d = features.column_count();
  if (n < 2) throw std::invalid_argument("pca_fit_transform: need >= 2 rows");
  if (!(variance_fraction > 0.0 && variance_fraction <= 1.0))
    throw std::invalid_argument("pca_fit_transform: variance_fraction must be in (0,1]");

  Eigen::MatrixXd x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    if (features.rows[i].size() != d)
      throw std::invalid_argument("pca_fit_transform: ragged feature matrix");
    for (std::size_t j = 0; j < d; ++j) {
      if (!std::isfinite(features.rows[i][j]))
        throw std::invalid_argument("pca_fit_transform: non-finite input");
      x(i, j) = features.rows[i][j];
    }
  }

  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("pca_fit_transform: eigendecomposition failed");

  // Eigen returns ascending eigenvalues; walk from the largest.
  const Eigen::VectorXd evals = solver.eigenvalues();
  const Eigen::MatrixXd evecs = solver.eigenvectors();
  double total = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) total += std::max(0.0, evals(i));
  if (total <= 0.0) throw std::invalid_argument("pca_fit_transform: zero-variance data");

  std::size_t k = 0;
  double cum = 0.0;
  for (Eigen::Index i = evals.size() - 1; i >= 0; --i) {
    cum += std::max(0.0, evals(i));
    ++k;
    if (cum / total >= variance_fraction - 1e-12) break;
  }

  PcaProjection proj;
  proj.variance_fraction = variance_fraction;
  proj.mean.assign(mean.data(), mean.data() + d);
  proj.components.resize(k, std::vector<double>(d));
  proj.explained_variance.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    const Eigen::Index col = evals.size() - 1 - static_cast<Eigen::Index>(c);
    proj.explained_variance[c] = std::max(0.0, evals(col));
    for (std::size_t j = 0; j < d; ++j) proj.components[c][j] = evecs(j, col);
  }

  return {proj, pca_transform(proj, features)};
}

std::vector<double> pca_transform_row(const PcaProjection& projection,
                                      const std::vector<double>& row) {
  if (row.size() != projection.input_dim())
    throw std::invalid_argument("pca_transform: dimension mismatch");
  std::vector<double> out(projection.output_dim(), 0.0);
  for (std::size_t c = 0; c < projection.output_dim(); ++c) {
    double acc = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j)
      acc += (row[j] - projection.mean[j]) * projection.components[c][j];
    out[c] = acc;
  }
  return out;
}

FeatureMatrix pca_transform(const PcaProjection& projection, const FeatureMatrix& features) {
  FeatureMatrix out;
  out.trial_ids = features.trial_ids;
  out.column_names.resize(projection.output_dim());
  for (std::size_t c = 0; c < projection.output_dim(); ++c)
    out.column_names[c] = "PC" + std::to_string(c + 1);
  out.rows.reserve(features.row_count());
  for (const auto& row : features.rows) out.rows.push_back(pca_transform_row(projection, row));
  return out;
}

}  // namespace abci
