#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace abci {

// m x m counts with counts[pred][truth] (columns are the truth).
struct ConfusionMatrix {
  std::vector<std::vector<std::int64_t>> counts;
  std::vector<std::string> class_names;

  std::size_t class_count() const { return counts.size(); }
  std::int64_t total() const;
  std::int64_t trace() const;
  std::int64_t truth_count(std::size_t k) const;      // column sum n_k
  std::int64_t predicted_count(std::size_t j) const;  // row sum
};

ConfusionMatrix confusion_matrix(const std::vector<int>& true_labels,
                                 const std::vector<int>& predicted_labels,
                                 std::size_t m);

ConfusionMatrix make_confusion(std::vector<std::vector<std::int64_t>> counts);

double accuracy(const ConfusionMatrix& cm);

// Mean per-class recall; chance level 1/m for any class distribution.
double balanced_accuracy(const ConfusionMatrix& cm);

struct PrecisionRecall {
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<std::string> flags;  // e.g. "class 1 never predicted"
};

PrecisionRecall precision_recall(const ConfusionMatrix& cm);

// (beta^2+1)PR / (beta^2 P + R); 0 (flagged upstream) when P = R = 0.
double f_beta(double precision, double recall, double beta);

double micro_f1(const ConfusionMatrix& cm);  // equals accuracy for single-label data

double macro_f1(const ConfusionMatrix& cm);
double macro_f1(const ConfusionMatrix& cm, std::vector<std::string>& flags);

// Majority-class proportion of a label vector.
double class_bias(const std::vector<int>& labels);

}  // namespace abci
