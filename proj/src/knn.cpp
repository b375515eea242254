#include "abci/knn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abci {

int knn_predict(const LabeledDataset& train, const std::vector<double>& query, int k) {
  const std::size_t n = train.size();
  if (n == 0) throw std::invalid_argument("knn_predict: empty training set");
  if (k < 1) throw std::invalid_argument("knn_predict: k < 1");
  if (static_cast<std::size_t>(k) > n) throw std::invalid_argument("knn_predict: k > n");

  const Scaler scaler = Scaler::fit(train.features.rows);
  const auto q = scaler.apply(query);

  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = scaler.apply(train.features.rows[i]);
    double d = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) d += (xi[j] - q[j]) * (xi[j] - q[j]);
    dist[i] = {d, i};
  }
  std::sort(dist.begin(), dist.end());  // pair order breaks distance ties by index

  int votes1 = 0;
  for (int i = 0; i < k; ++i) votes1 += train.labels[dist[static_cast<std::size_t>(i)].second];
  const int votes0 = k - votes1;
  if (votes1 != votes0) return votes1 > votes0 ? 1 : 0;

  int train1 = 0;
  for (int l : train.labels) train1 += l;
  const int train0 = static_cast<int>(n) - train1;
  if (train1 != train0) return train1 > train0 ? 1 : 0;
  return 0;
}

}  // namespace abci
