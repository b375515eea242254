#include "abci/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abci {

namespace {

double trapezoid_sum(const std::vector<double>& values, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) s += 0.5 * (values[i] + values[i + 1]);
  return s * h;
}

// Discrete approximation of (f * g) on a shared uniform grid, trapezoid rule
// in the integration variable. Output length = |f| + |g| - 1.
std::vector<double> convolve(const std::vector<double>& f, const std::vector<double>& g,
                             double h) {
  std::vector<double> fw(f), gw(g);
  fw.front() *= 0.5;
  fw.back() *= 0.5;
  gw.front() *= 0.5;
  gw.back() *= 0.5;
  std::vector<double> out(f.size() + g.size() - 1, 0.0);
  for (std::size_t i = 0; i < fw.size(); ++i) {
    if (fw[i] == 0.0) continue;
    const double fi = fw[i];
    for (std::size_t j = 0; j < gw.size(); ++j) out[i + j] += fi * gw[j];
  }
  for (double& v : out) v *= h;
  return out;
}

}  // namespace

double PosteriorDensity::mean() const {
  const double h = grid_spacing();
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    s += 0.5 * (grid[i] * density[i] + grid[i + 1] * density[i + 1]);
  return s * h;
}

double PosteriorDensity::mode() const {
  const auto it = std::max_element(density.begin(), density.end());
  return grid[static_cast<std::size_t>(it - density.begin())];
}

PosteriorDensity make_posterior(std::vector<double> density_samples) {
  const std::size_t g = density_samples.size();
  if (g < 3) throw std::invalid_argument("make_posterior: grid too small");
  const double h = 1.0 / static_cast<double>(g - 1);
  const double norm = trapezoid_sum(density_samples, h);
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::invalid_argument("make_posterior: density does not integrate to a positive value");

  PosteriorDensity post;
  post.grid.resize(g);
  post.density.resize(g);
  post.cdf.resize(g);
  double cum = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    post.grid[i] = static_cast<double>(i) * h;
    post.density[i] = density_samples[i] / norm;
    if (i > 0) cum += 0.5 * (post.density[i - 1] + post.density[i]) * h;
    post.cdf[i] = cum;
  }
  const double last = post.cdf.back();
  for (double& c : post.cdf) c /= last;  // pin cdf[last] = 1 exactly
  return post;
}

PosteriorDensity balanced_accuracy_posterior(const ConfusionMatrix& cm, std::size_t grid_size) {
  const std::size_t m = cm.class_count();
  if (m < 2) throw std::invalid_argument("balanced_accuracy_posterior: need >= 2 classes");
  if (grid_size < 501) throw std::invalid_argument("balanced_accuracy_posterior: grid_size < 501");

  const double h = 1.0 / static_cast<double>(grid_size - 1);

  // Per-class posterior densities sampled on the shared grid.
  std::vector<std::vector<double>> class_density;
  for (std::size_t k = 0; k < m; ++k) {
    const std::int64_t nk = cm.truth_count(k);
    if (nk == 0)
      throw std::invalid_argument("balanced_accuracy_posterior: class " + std::to_string(k) +
                                  " has zero truth count");
    const BetaParams params{static_cast<double>(cm.counts[k][k]) + 1.0,
                            static_cast<double>(nk - cm.counts[k][k]) + 1.0};
    std::vector<double> dens(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i)
      dens[i] = beta_pdf(params, static_cast<double>(i) * h);
    class_density.push_back(std::move(dens));
  }

  // Density of the sum on [0, m].
  std::vector<double> sum_density = class_density[0];
  for (std::size_t k = 1; k < m; ++k) sum_density = convolve(sum_density, class_density[k], h);

  // Mean = sum / m; grid point j of the mean maps to index m*j of the sum.
  std::vector<double> mean_density(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j)
    mean_density[j] = static_cast<double>(m) * sum_density[m * j];

  return make_posterior(std::move(mean_density));
}

CredibleInterval credible_interval(const PosteriorDensity& post, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("credible_interval: alpha outside (0,1)");
  if (post.cdf.size() < 3 || post.cdf.size() != post.grid.size())
    throw std::invalid_argument("credible_interval: malformed posterior");

  auto quantile = [&](double p) {
    const auto it = std::lower_bound(post.cdf.begin(), post.cdf.end(), p);
    if (it == post.cdf.begin()) return post.grid.front();
    if (it == post.cdf.end()) return post.grid.back();
    const std::size_t i = static_cast<std::size_t>(it - post.cdf.begin());
    const double c0 = post.cdf[i - 1], c1 = post.cdf[i];
    const double t = c1 > c0 ? (p - c0) / (c1 - c0) : 0.0;
    return post.grid[i - 1] + t * (post.grid[i] - post.grid[i - 1]);
  };
  return {quantile(alpha / 2.0), quantile(1.0 - alpha / 2.0), 1.0 - alpha};
}

double probability_above(const PosteriorDensity& post, double threshold) {
  if (threshold < 0.0 || threshold > 1.0)
    throw std::invalid_argument("probability_above: threshold outside [0,1]");
  if (threshold <= post.grid.front()) return 1.0;
  if (threshold >= post.grid.back()) return 0.0;
  const double h = post.grid_spacing();
  const std::size_t i = static_cast<std::size_t>(threshold / h);
  const std::size_t lo = std::min(i, post.cdf.size() - 2);
  const double t = (threshold - post.grid[lo]) / h;
  const double cdf = post.cdf[lo] * (1.0 - t) + post.cdf[lo + 1] * t;
  return 1.0 - cdf;
}

GroupSignificance group_proportion_posterior(long n_above, long n_total, double alpha) {
  if (n_total < 1) throw std::invalid_argument("group_proportion_posterior: n_total < 1");
  if (n_above < 0 || n_above > n_total)
    throw std::invalid_argument("group_proportion_posterior: inconsistent counts");
  GroupSignificance g;
  g.n_participants = n_total;
  g.n_above_chance = n_above;
  g.proportion = static_cast<double>(n_above) / static_cast<double>(n_total);
  g.interval = single_class_credible_interval(n_above, n_total, alpha);
  return g;
}

TTestResult two_sample_ttest(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("two_sample_ttest: each sample needs >= 2 values");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double ma = 0.0, mb = 0.0;
  for (double v : a) ma += v;
  for (double v : b) mb += v;
  ma /= na;
  mb /= nb;
  double ssa = 0.0, ssb = 0.0;
  for (double v : a) ssa += (v - ma) * (v - ma);
  for (double v : b) ssb += (v - mb) * (v - mb);

  const double df = na + nb - 2.0;
  const double pooled = (ssa + ssb) / df;
  TTestResult r{};
  if (pooled <= 0.0) {
    r.degenerate = true;
    if (ma == mb) {
      r.t = 0.0;
      r.p = 1.0;
      r.reject_at_05 = false;
    } else {
      r.t = ma > mb ? HUGE_VAL : -HUGE_VAL;
      r.p = 0.0;
      r.reject_at_05 = true;
    }
    return r;
  }
  r.t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  // Two-tailed p from the t CDF via the regularized incomplete beta.
  const double x = df / (df + r.t * r.t);
  r.p = beta_cdf({df / 2.0, 0.5}, x);
  r.reject_at_05 = r.p < 0.05;
  return r;
}

}  // namespace abci
