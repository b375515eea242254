#pragma once

#include "abci/beta_dist.hpp"
#include "abci/confusion.hpp"

#include <vector>

namespace abci {

// Gridded density over [0,1] with its CDF; trapezoidal integral = 1.
struct PosteriorDensity {
  std::vector<double> grid;
  std::vector<double> density;
  std::vector<double> cdf;

  double grid_spacing() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
  double mean() const;
  double mode() const;
};

// Normalizes a density sampled on a uniform [0,1] grid and builds its CDF.
PosteriorDensity make_posterior(std::vector<double> density_samples);

constexpr std::size_t kDefaultPosteriorGrid = 2001;

// Posterior of balanced accuracy: per-class Beta(C_kk+1, n_k-C_kk+1)
// densities combined by m-fold discrete convolution on the [0,m] sum
// support, then rescaled to the [0,1] mean support.
PosteriorDensity balanced_accuracy_posterior(const ConfusionMatrix& cm,
                                             std::size_t grid_size = kDefaultPosteriorGrid);

// Equal-tailed interval from the gridded CDF (linear interpolation).
CredibleInterval credible_interval(const PosteriorDensity& post, double alpha);

// 1 - CDF(threshold).
double probability_above(const PosteriorDensity& post, double threshold);

struct GroupSignificance {
  long n_participants;
  long n_above_chance;
  double proportion;
  CredibleInterval interval;
};

// Beta posterior of the group proportion of above-chance participants.
GroupSignificance group_proportion_posterior(long n_above, long n_total, double alpha);

struct TTestResult {
  double t;
  double p;
  bool reject_at_05;
  bool degenerate = false;  // zero pooled variance
};

// Pooled-variance two-tailed Student's t-test.
TTestResult two_sample_ttest(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace abci
