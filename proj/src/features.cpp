#include "abci/features.hpp"

#include <cmath>
#include <stdexcept>

namespace abci {

namespace {

double stddev(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(x.size()));
}

std::vector<double> first_difference(const std::vector<double>& x) {
  std::vector<double> d(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) d[i] = x[i + 1] - x[i];
  return d;
}

}  // namespace

double hjorth_mobility(const std::vector<double>& signal) {
  if (signal.size() < 3) throw std::invalid_argument("hjorth_mobility: need >= 3 samples");
  const double sx = stddev(signal);
  if (sx == 0.0) throw std::invalid_argument("hjorth_mobility: constant signal");
  return stddev(first_difference(signal)) / sx;
}

double hjorth_complexity(const std::vector<double>& signal) {
  if (signal.size() < 4) throw std::invalid_argument("hjorth_complexity: need >= 4 samples");
  const double sx = stddev(signal);
  if (sx == 0.0) throw std::invalid_argument("hjorth_complexity: constant signal");
  const auto d = first_difference(signal);
  const double sd = stddev(d);
  if (sd == 0.0) throw std::invalid_argument("hjorth_complexity: constant first derivative");
  const double sdd = stddev(first_difference(d));
  return (sdd / sd) / (sd / sx);
}

double spectral_entropy(const Spectrum& spectrum, double low_hz, double high_hz) {
  if (!(low_hz < high_hz)) throw std::invalid_argument("spectral_entropy: invalid range");
  double total = 0.0;
  std::size_t nbins = 0;
  for (std::size_t i = 0; i < spectrum.frequencies_hz.size(); ++i) {
    const double f = spectrum.frequencies_hz[i];
    if (f < low_hz - 1e-12 || f > high_hz + 1e-12) continue;
    total += spectrum.psd[i];
    ++nbins;
  }
  if (nbins < 2) throw std::invalid_argument("spectral_entropy: fewer than 2 bins in range");
  if (total <= 0.0) throw std::invalid_argument("spectral_entropy: zero spectrum in range");

  double h = 0.0;
  for (std::size_t i = 0; i < spectrum.frequencies_hz.size(); ++i) {
    const double f = spectrum.frequencies_hz[i];
    if (f < low_hz - 1e-12 || f > high_hz + 1e-12) continue;
    const double p = spectrum.psd[i] / total;
    if (p > 0.0) h -= p * std::log2(p);
  }
  const double ratio = h / std::log2(static_cast<double>(nbins));
  // flat and single-bin spectra should hit the endpoints exactly
  if (std::fabs(ratio - 1.0) < 1e-12) return 1.0;
  if (ratio < 1e-12) return 0.0;
  return ratio;
}

double asymmetry_index(double right_power, double left_power, AsymmetryForm form) {
  if (right_power <= 0.0 || left_power <= 0.0)
    throw std::invalid_argument("asymmetry_index: powers must be > 0");
  switch (form) {
    case AsymmetryForm::log_ratio:
      return std::log(right_power / left_power);
    case AsymmetryForm::normalized:
      if (right_power <= left_power)
        throw std::invalid_argument("asymmetry_index: normalized form requires R > L");
      return std::log((right_power - left_power) / (right_power + left_power));
  }
  throw std::invalid_argument("asymmetry_index: unknown form");
}

double theta_beta_ratio(double theta_power, double beta_power) {
  if (theta_power <= 0.0 || beta_power <= 0.0)
    throw std::invalid_argument("theta_beta_ratio: powers must be > 0");
  return std::log(theta_power / beta_power);
}

}  // namespace abci
