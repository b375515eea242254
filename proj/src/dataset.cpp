#include "abci/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace abci {

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::valence:   return "valence";
    case Dimension::arousal:   return "arousal";
    case Dimension::dominance: return "dominance";
  }
  return "?";
}

Dimension parse_dimension(const std::string& name) {
  for (Dimension d : {Dimension::valence, Dimension::arousal, Dimension::dominance})
    if (name == dimension_name(d)) return d;
  throw std::invalid_argument("unknown dimension: " + name);
}

std::vector<int> threshold_labels(const std::vector<double>& ratings, int scale_max,
                                  double split) {
  if (scale_max < 2) throw std::invalid_argument("threshold_labels: scale_max < 2");
  std::vector<int> labels;
  labels.reserve(ratings.size());
  for (double r : ratings) {
    if (r < 1.0 || r > static_cast<double>(scale_max))
      throw std::invalid_argument("threshold_labels: rating " + std::to_string(r) +
                                  " outside [1," + std::to_string(scale_max) + "]");
    labels.push_back(r >= split ? 1 : 0);
  }
  return labels;
}

Scaler Scaler::fit(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("Scaler::fit: empty training set");
  const std::size_t d = rows[0].size();
  Scaler s;
  s.mean.assign(d, 0.0);
  s.stddev.assign(d, 1.0);
  for (const auto& row : rows) {
    if (row.size() != d) throw std::invalid_argument("Scaler::fit: ragged rows");
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  }
  for (double& m : s.mean) m /= static_cast<double>(rows.size());
  for (std::size_t j = 0; j < d; ++j) {
    double ss = 0.0;
    for (const auto& row : rows) ss += (row[j] - s.mean[j]) * (row[j] - s.mean[j]);
    const double sd = std::sqrt(ss / static_cast<double>(rows.size()));
    if (sd > 0.0) s.stddev[j] = sd;
  }
  return s;
}

std::vector<double> Scaler::apply(const std::vector<double>& row) const {
  if (row.size() != mean.size()) throw std::invalid_argument("Scaler::apply: dimension mismatch");
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / stddev[j];
  return out;
}

std::vector<std::vector<double>> Scaler::apply_all(
    const std::vector<std::vector<double>>& rows) const {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(apply(row));
  return out;
}

}  // namespace abci
