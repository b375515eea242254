#pragma once

#include "abci/dataset.hpp"

namespace abci {

// Majority vote among the k nearest neighbors by Euclidean distance on
// z-scored features (scaler fit on the training set). Distance ties break
// toward the lower trial index; vote ties toward the training majority
// class, then toward label 0.
int knn_predict(const LabeledDataset& train, const std::vector<double>& query, int k);

}  // namespace abci
