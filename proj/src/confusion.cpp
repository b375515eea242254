#include "abci/confusion.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace abci {

std::int64_t ConfusionMatrix::total() const {
  std::int64_t t = 0;
  for (const auto& row : counts)
    for (std::int64_t c : row) t += c;
  return t;
}

std::int64_t ConfusionMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) t += counts[k][k];
  return t;
}

std::int64_t ConfusionMatrix::truth_count(std::size_t k) const {
  std::int64_t t = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) t += counts[j][k];
  return t;
}

std::int64_t ConfusionMatrix::predicted_count(std::size_t j) const {
  std::int64_t t = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) t += counts[j][k];
  return t;
}

ConfusionMatrix make_confusion(std::vector<std::vector<std::int64_t>> counts) {
  const std::size_t m = counts.size();
  if (m < 2) throw std::invalid_argument("confusion matrix: need >= 2 classes");
  for (const auto& row : counts) {
    if (row.size() != m) throw std::invalid_argument("confusion matrix: not square");
    for (std::int64_t c : row)
      if (c < 0) throw std::invalid_argument("confusion matrix: negative count");
  }
  ConfusionMatrix cm;
  cm.counts = std::move(counts);
  if (cm.total() == 0) throw std::invalid_argument("confusion matrix: no observations");
  cm.class_names.resize(m);
  for (std::size_t k = 0; k < m; ++k) cm.class_names[k] = std::to_string(k);
  return cm;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& true_labels,
                                 const std::vector<int>& predicted_labels,
                                 std::size_t m) {
  if (true_labels.size() != predicted_labels.size())
    throw std::invalid_argument("confusion_matrix: length mismatch");
  if (m < 2) throw std::invalid_argument("confusion_matrix: need >= 2 classes");
  std::vector<std::vector<std::int64_t>> counts(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < true_labels.size(); ++i) {
    const int t = true_labels[i], p = predicted_labels[i];
    if (t < 0 || p < 0 || t >= static_cast<int>(m) || p >= static_cast<int>(m))
      throw std::invalid_argument("confusion_matrix: label out of range");
    ++counts[p][t];
  }
  return make_confusion(std::move(counts));
}

double accuracy(const ConfusionMatrix& cm) {
  const std::int64_t n = cm.total();
  if (n == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(n);
}

double balanced_accuracy(const ConfusionMatrix& cm) {
  const std::size_t m = cm.class_count();
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::int64_t nk = cm.truth_count(k);
    if (nk == 0)
      throw std::invalid_argument("balanced_accuracy: class " + std::to_string(k) +
                                  " absent from truth");
    sum += static_cast<double>(cm.counts[k][k]) / static_cast<double>(nk);
  }
  return sum / static_cast<double>(m);
}

PrecisionRecall precision_recall(const ConfusionMatrix& cm) {
  const std::size_t m = cm.class_count();
  PrecisionRecall pr;
  pr.precision.resize(m);
  pr.recall.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::int64_t nk = cm.truth_count(k);
    if (nk == 0)
      throw std::invalid_argument("precision_recall: class " + std::to_string(k) +
                                  " absent from truth");
    pr.recall[k] = static_cast<double>(cm.counts[k][k]) / static_cast<double>(nk);
    const std::int64_t predicted = cm.predicted_count(k);
    if (predicted == 0) {
      pr.precision[k] = 0.0;
      pr.flags.push_back("class " + std::to_string(k) + " never predicted");
    } else {
      pr.precision[k] = static_cast<double>(cm.counts[k][k]) / static_cast<double>(predicted);
    }
  }
  return pr;
}

double f_beta(double precision, double recall, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("f_beta: beta must be > 0");
  if (precision < 0.0 || precision > 1.0 || recall < 0.0 || recall > 1.0)
    throw std::invalid_argument("f_beta: P and R must be in [0,1]");
  if (precision == 0.0 && recall == 0.0) return 0.0;
  const double b2 = beta * beta;
  return (b2 + 1.0) * precision * recall / (b2 * precision + recall);
}

double micro_f1(const ConfusionMatrix& cm) {
  const std::int64_t n = cm.total();
  if (n == 0) throw std::invalid_argument("micro_f1: empty confusion matrix");
  // Aggregated precision and recall coincide at trace/total for single-label
  // data, so their harmonic mean is that same ratio.
  return static_cast<double>(cm.trace()) / static_cast<double>(n);
}

double macro_f1(const ConfusionMatrix& cm, std::vector<std::string>& flags) {
  const PrecisionRecall pr = precision_recall(cm);
  flags.insert(flags.end(), pr.flags.begin(), pr.flags.end());
  double sum = 0.0;
  for (std::size_t k = 0; k < cm.class_count(); ++k)
    sum += f_beta(pr.precision[k], pr.recall[k], 1.0);
  return sum / static_cast<double>(cm.class_count());
}

double macro_f1(const ConfusionMatrix& cm) {
  std::vector<std::string> flags;
  return macro_f1(cm, flags);
}

double class_bias(const std::vector<int>& labels) {
  if (labels.empty()) throw std::invalid_argument("class_bias: empty labels");
  std::map<int, std::size_t> counts;
  for (int l : labels) ++counts[l];
  std::size_t best = 0;
  for (const auto& [label, count] : counts) best = std::max(best, count);
  return static_cast<double>(best) / static_cast<double>(labels.size());
}

}  // namespace abci
