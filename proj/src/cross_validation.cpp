#include "abci/cross_validation.hpp"

#include "abci/knn.hpp"
#include "abci/pca.hpp"
#include "abci/svm.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace abci {

std::string ClassifierDescriptor::to_string() const {
  std::ostringstream os;
  os << type;
  if (type == "svm") {
    os << ";C=" << C << ";gamma=" << gamma;
  } else {
    os << ";k=" << k;
  }
  os << ";seed=" << seed;
  return os.str();
}

std::vector<int> make_folds(std::size_t n, const CvScheme& scheme) {
  if (scheme.kind == CvKind::leave_one_out) {
    if (n < 2) throw std::invalid_argument("make_folds: leave_one_out needs n >= 2");
    std::vector<int> folds(n);
    std::iota(folds.begin(), folds.end(), 0);
    return folds;
  }
  if (scheme.k < 2) throw std::invalid_argument("make_folds: k_fold needs k >= 2");
  if (n < static_cast<std::size_t>(scheme.k))
    throw std::invalid_argument("make_folds: fewer samples than folds");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(scheme.seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<int> folds(n);
  const std::size_t k = static_cast<std::size_t>(scheme.k);
  const std::size_t base = n / k, extra = n % k;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) folds[order[pos++]] = static_cast<int>(f);
  }
  return folds;
}

namespace {

LabeledDataset subset(const LabeledDataset& data, const std::vector<std::size_t>& idx) {
  LabeledDataset out;
  out.dimension = data.dimension;
  out.features.column_names = data.features.column_names;
  for (std::size_t i : idx) {
    out.features.rows.push_back(data.features.rows[i]);
    if (i < data.features.trial_ids.size())
      out.features.trial_ids.push_back(data.features.trial_ids[i]);
    out.labels.push_back(data.labels[i]);
  }
  return out;
}

int majority_label(const std::vector<int>& labels) {
  int ones = 0;
  for (int l : labels) ones += l;
  const int zeros = static_cast<int>(labels.size()) - ones;
  return ones > zeros ? 1 : 0;
}

// Train on the fold's training rows and predict its test rows.
std::vector<int> fit_predict(const LabeledDataset& train,
                             const std::vector<std::vector<double>>& test_rows,
                             const ClassifierDescriptor& clf) {
  std::vector<int> preds;
  preds.reserve(test_rows.size());
  if (clf.type == "svm") {
    const SvmModel model = svm_train(train, clf.C, clf.gamma);
    for (const auto& row : test_rows) preds.push_back(svm_predict(model, row));
  } else if (clf.type == "knn") {
    const int k = std::min<int>(clf.k, static_cast<int>(train.size()));
    for (const auto& row : test_rows) preds.push_back(knn_predict(train, row, k));
  } else {
    throw std::invalid_argument("unknown classifier type: " + clf.type);
  }
  return preds;
}

}  // namespace

PredictionSet cross_validate(const LabeledDataset& data, const CvScheme& scheme,
                             const ClassifierDescriptor& classifier,
                             std::optional<double> pca_variance_fraction) {
  const std::size_t n = data.size();
  if (data.features.rows.size() != n)
    throw std::invalid_argument("cross_validate: feature/label count mismatch");

  const std::vector<int> folds = make_folds(n, scheme);
  const int n_folds =
      scheme.kind == CvKind::leave_one_out ? static_cast<int>(n) : scheme.k;

  PredictionSet out;
  out.trial_ids = data.features.trial_ids;
  out.true_labels = data.labels;
  out.predicted_labels.assign(n, -1);
  out.fold_assignments = folds;
  out.classifier_descriptor = classifier.to_string();

  for (int f = 0; f < n_folds; ++f) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < n; ++i) (folds[i] == f ? test_idx : train_idx).push_back(i);
    if (test_idx.empty()) continue;

    LabeledDataset train = subset(data, train_idx);
    std::vector<std::vector<double>> test_rows;
    for (std::size_t i : test_idx) test_rows.push_back(data.features.rows[i]);

    const bool single_class =
        std::all_of(train.labels.begin(), train.labels.end(),
                    [&](int l) { return l == train.labels[0]; });
    std::vector<int> preds;
    if (single_class) {
      preds.assign(test_idx.size(), majority_label(train.labels));
      out.flags.push_back("fold " + std::to_string(f) +
                          ": single-class training set, majority fallback");
    } else {
      if (pca_variance_fraction) {
        const Scaler scaler = Scaler::fit(train.features.rows);
        FeatureMatrix scaled;
        scaled.rows = scaler.apply_all(train.features.rows);
        auto [proj, reduced] = pca_fit_transform(scaled, *pca_variance_fraction);
        train.features = std::move(reduced);
        for (auto& row : test_rows) row = pca_transform_row(proj, scaler.apply(row));
      }
      preds = fit_predict(train, test_rows, classifier);
    }
    for (std::size_t t = 0; t < test_idx.size(); ++t)
      out.predicted_labels[test_idx[t]] = preds[t];
  }
  return out;
}

SvmParams select_hyperparameters(const LabeledDataset& data, const ParameterGrid& grid,
                                 double holdout_fraction, std::uint64_t seed) {
  if (!(holdout_fraction > 0.0 && holdout_fraction <= 0.5))
    throw std::invalid_argument("select_hyperparameters: holdout_fraction outside (0, 0.5]");
  if (grid.C.empty() || grid.gamma_times_d.empty())
    throw std::invalid_argument("select_hyperparameters: empty grid");
  const std::size_t n = data.size();
  const std::size_t d = data.features.column_count();

  // Stratified holdout: every class contributes >= 1 point to each side.
  std::vector<std::size_t> holdout_idx, train_idx;
  std::mt19937_64 rng(seed);
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (data.labels[i] == cls) members.push_back(i);
    if (members.size() < 2)
      throw std::invalid_argument(
          "select_hyperparameters: class " + std::to_string(cls) +
          " too small for a stratified holdout");
    std::shuffle(members.begin(), members.end(), rng);
    std::size_t take = static_cast<std::size_t>(std::lround(holdout_fraction * members.size()));
    take = std::clamp<std::size_t>(take, 1, members.size() - 1);
    holdout_idx.insert(holdout_idx.end(), members.begin(), members.begin() + take);
    train_idx.insert(train_idx.end(), members.begin() + take, members.end());
  }
  std::sort(holdout_idx.begin(), holdout_idx.end());
  std::sort(train_idx.begin(), train_idx.end());

  const LabeledDataset train = subset(data, train_idx);
  const LabeledDataset holdout = subset(data, holdout_idx);

  std::vector<double> cs(grid.C), gs(grid.gamma_times_d);
  std::sort(cs.begin(), cs.end());
  std::sort(gs.begin(), gs.end());

  SvmParams best{0.0, 0.0, -1.0};
  for (double c : cs) {
    for (double g : gs) {
      const double gamma = g / static_cast<double>(d);
      const SvmModel model = svm_train(train, c, gamma);
      double correct0 = 0, correct1 = 0, n0 = 0, n1 = 0;
      for (std::size_t i = 0; i < holdout.size(); ++i) {
        const int pred = svm_predict(model, holdout.features.rows[i]);
        if (holdout.labels[i] == 0) {
          ++n0;
          if (pred == 0) ++correct0;
        } else {
          ++n1;
          if (pred == 1) ++correct1;
        }
      }
      const double bacc = 0.5 * (correct0 / n0 + correct1 / n1);
      if (bacc > best.holdout_balanced_accuracy) best = {c, gamma, bacc};
    }
  }
  return best;
}

}  // namespace abci
