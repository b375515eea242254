#include "abci/experiment.hpp"

#include "abci/fir.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace abci {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional, const std::string& context) {
  for (const auto& k : required)
    if (!obj.contains(k))
      throw std::runtime_error(context + ": missing key \"" + k + "\"");
  for (const auto& [key, value] : obj.items()) {
    bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                 std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) throw std::runtime_error(context + ": unknown key \"" + key + "\"");
  }
}

}  // namespace

std::uint64_t unit_seed(std::uint64_t global_seed, const std::string& participant_id,
                        Dimension dimension, FeatureSet set, const std::string& classifier) {
  // FNV-1a over the unit identity string.
  std::string key = std::to_string(global_seed) + "|" + participant_id + "|" +
                    dimension_name(dimension) + "|" + feature_set_name(set) + "|" + classifier;
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("config parse error in " + path.string() + ": " + e.what());
  }

  require_keys(j, {"manifest_path", "feature_sets", "classifiers", "cv", "output_dir"},
               {"alpha", "seed", "dimensions", "permute_labels", "fir", "holdout_fraction",
                "frontal_pairs", "bands"},
               "config");

  ExperimentConfig cfg;
  const auto base = path.parent_path();
  std::filesystem::path manifest = j.at("manifest_path").get<std::string>();
  cfg.manifest_path = manifest.is_absolute() ? manifest : base / manifest;
  std::filesystem::path outdir = j.at("output_dir").get<std::string>();
  cfg.output_dir = outdir.is_absolute() ? outdir : base / outdir;

  for (const auto& s : j.at("feature_sets"))
    cfg.feature_sets.push_back(parse_feature_set(s.get<std::string>()));
  if (cfg.feature_sets.empty()) throw std::runtime_error("config: empty feature_sets");

  for (const auto& cj : j.at("classifiers")) {
    require_keys(cj, {"type"}, {"C", "gamma", "k", "seed"}, "classifier");
    ClassifierDescriptor d;
    d.type = cj.at("type").get<std::string>();
    if (d.type != "svm" && d.type != "knn")
      throw std::runtime_error("config: classifier type must be svm or knn");
    if (cj.contains("C")) d.C = cj.at("C").get<double>();
    if (cj.contains("gamma")) d.gamma = cj.at("gamma").get<double>();
    if (cj.contains("k")) d.k = cj.at("k").get<int>();
    if (cj.contains("seed")) d.seed = cj.at("seed").get<std::uint64_t>();
    cfg.classifiers.push_back(d);
  }
  if (cfg.classifiers.empty()) throw std::runtime_error("config: empty classifiers");

  const json& cvj = j.at("cv");
  require_keys(cvj, {"kind"}, {"k", "seed"}, "cv");
  const std::string kind = cvj.at("kind").get<std::string>();
  if (kind == "leave_one_out") cfg.cv.kind = CvKind::leave_one_out;
  else if (kind == "k_fold") cfg.cv.kind = CvKind::k_fold;
  else throw std::runtime_error("config: cv.kind must be leave_one_out or k_fold");
  if (cvj.contains("k")) cfg.cv.k = cvj.at("k").get<int>();
  if (cvj.contains("seed")) cfg.cv.seed = cvj.at("seed").get<std::uint64_t>();

  if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw std::runtime_error("config: alpha outside (0,1)");
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("permute_labels")) cfg.permute_labels = j.at("permute_labels").get<bool>();
  if (j.contains("holdout_fraction"))
    cfg.holdout_fraction = j.at("holdout_fraction").get<double>();

  if (j.contains("dimensions")) {
    cfg.dimensions.clear();
    for (const auto& dj : j.at("dimensions"))
      cfg.dimensions.push_back(parse_dimension(dj.get<std::string>()));
    if (cfg.dimensions.empty()) throw std::runtime_error("config: empty dimensions");
  }

  if (j.contains("fir")) {
    const json& fj = j.at("fir");
    require_keys(fj, {}, {"enabled", "low_hz", "high_hz", "order"}, "fir");
    if (fj.contains("enabled")) cfg.fir.enabled = fj.at("enabled").get<bool>();
    if (fj.contains("low_hz")) cfg.fir.low_hz = fj.at("low_hz").get<double>();
    if (fj.contains("high_hz")) cfg.fir.high_hz = fj.at("high_hz").get<double>();
    if (fj.contains("order")) cfg.fir.order = fj.at("order").get<int>();
  }

  if (j.contains("frontal_pairs")) {
    cfg.feature_config.frontal_pairs.clear();
    for (const auto& pj : j.at("frontal_pairs")) {
      if (!pj.is_array() || pj.size() != 2)
        throw std::runtime_error("config: frontal_pairs entries must be [left, right]");
      cfg.feature_config.frontal_pairs.emplace_back(pj[0].get<std::string>(),
                                                    pj[1].get<std::string>());
    }
  }

  if (j.contains("bands")) {
    for (const auto& [name, edges] : j.at("bands").items()) {
      if (!edges.is_array() || edges.size() != 2)
        throw std::runtime_error("config: band override must be [low, high]");
      FrequencyBand* band = nullptr;
      if (name == "theta") band = &cfg.feature_config.theta;
      else if (name == "alpha") band = &cfg.feature_config.alpha;
      else if (name == "beta1") band = &cfg.feature_config.beta1;
      else if (name == "beta2") band = &cfg.feature_config.beta2;
      else if (name == "gamma") band = &cfg.feature_config.gamma;
      else throw std::runtime_error("config: unknown band \"" + name + "\"");
      band->low_hz = edges[0].get<double>();
      band->high_hz = edges[1].get<double>();
      if (!(band->low_hz < band->high_hz))
        throw std::runtime_error("config: band \"" + name + "\" has low >= high");
    }
  }

  return cfg;
}

namespace {

struct WorkUnit {
  std::size_t participant;
  Dimension dimension;
  FeatureSet set;
  std::size_t classifier;
};

ExperimentResult degenerate_record(const ExperimentConfig& cfg, const std::string& pid,
                                   const WorkUnit& unit, const std::vector<int>& labels,
                                   const std::string& clf_desc) {
  // All ratings fell on one side of the split: nothing to classify.
  ExperimentResult r;
  r.participant_id = pid;
  r.dimension = unit.dimension;
  r.feature_set = unit.set;
  r.classifier = clf_desc;
  r.n_trials = labels.size();
  r.class_bias = 1.0;
  r.accuracy = 1.0;  // majority prediction is trivially always right
  r.balanced_accuracy = 1.0;
  r.micro_f1 = 1.0;
  r.macro_f1 = 1.0;
  const auto ci = single_class_credible_interval(static_cast<long>(labels.size()),
                                                 static_cast<long>(labels.size()), cfg.alpha);
  r.bacc_ci_low = ci.low;
  r.bacc_ci_high = ci.high;
  r.above_chance = false;
  r.quality_flags.push_back("degenerate_single_class");
  return r;
}

ExperimentResult run_unit(const ExperimentConfig& cfg, const Dataset& ds,
                          const FeatureMatrix& features, const WorkUnit& unit) {
  const LoadedParticipant& part = ds.participants[unit.participant];
  const ClassifierDescriptor& base_clf = cfg.classifiers[unit.classifier];
  const std::uint64_t useed = unit_seed(cfg.seed, part.participant_id, unit.dimension, unit.set,
                                        base_clf.to_string());

  const double split = ds.manifest.split_point_for(part.participant_id);
  std::vector<int> labels =
      threshold_labels(part.ratings.at(unit.dimension), ds.manifest.rating_scale_max, split);

  ExperimentResult r;
  r.participant_id = part.participant_id;
  r.dimension = unit.dimension;
  r.feature_set = unit.set;
  r.n_trials = labels.size();

  if (cfg.permute_labels) {
    std::mt19937_64 rng(useed ^ 0x9e3779b97f4a7c15ULL);
    std::shuffle(labels.begin(), labels.end(), rng);
    r.quality_flags.push_back("labels_permuted");
  }

  const bool single_class =
      std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels[0]; });
  if (single_class) {
    auto rec = degenerate_record(cfg, part.participant_id, unit, labels, base_clf.to_string());
    rec.quality_flags.insert(rec.quality_flags.begin(), r.quality_flags.begin(),
                             r.quality_flags.end());
    return rec;
  }

  LabeledDataset data;
  data.features = features;
  data.labels = labels;
  data.dimension = unit.dimension;

  ClassifierDescriptor clf = base_clf;
  clf.seed = useed;
  if (clf.type == "svm" && (clf.C <= 0.0 || clf.gamma <= 0.0)) {
    try {
      const SvmParams params = select_hyperparameters(data, ParameterGrid{},
                                                      cfg.holdout_fraction, useed);
      clf.C = params.C;
      clf.gamma = params.gamma;
      r.quality_flags.push_back("grid_selected");
    } catch (const std::invalid_argument&) {
      // Minority class too small for a stratified holdout; fixed fallback.
      clf.C = 1.0;
      clf.gamma = 1.0 / static_cast<double>(features.column_count());
      r.quality_flags.push_back("grid_selection_skipped_small_class");
    }
  }
  r.classifier = clf.to_string();

  CvScheme scheme = cfg.cv;
  scheme.seed = useed;
  std::optional<double> pca;
  if (unit.set == FeatureSet::AllPCA) pca = 0.98;
  const PredictionSet preds = cross_validate(data, scheme, clf, pca);
  for (const auto& f : preds.flags) r.quality_flags.push_back(f);

  const ConfusionMatrix cm = confusion_matrix(preds.true_labels, preds.predicted_labels, 2);
  r.class_bias = class_bias(labels);
  r.accuracy = accuracy(cm);
  r.balanced_accuracy = balanced_accuracy(cm);
  r.micro_f1 = micro_f1(cm);
  r.macro_f1 = macro_f1(cm, r.quality_flags);

  const PosteriorDensity post = balanced_accuracy_posterior(cm);
  const CredibleInterval ci = credible_interval(post, cfg.alpha);
  r.bacc_ci_low = ci.low;
  r.bacc_ci_high = ci.high;
  r.above_chance = ci.low > 0.5;
  return r;
}

}  // namespace

std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config, int jobs) {
  const int fir_order = config.fir.enabled ? config.fir.order : 0;
  const std::size_t min_samples =
      config.fir.enabled ? 2 * static_cast<std::size_t>(fir_order) : 8;
  Dataset ds = load_dataset(config.manifest_path, min_samples);

  if (config.fir.enabled) {
    const FilterKernel kernel = design_bandpass_fir(config.fir.low_hz, config.fir.high_hz,
                                                    ds.manifest.sample_rate_hz, config.fir.order);
    for (auto& part : ds.participants)
      for (auto& trial : part.trials) trial = apply_filter(trial, kernel);
  }

  // Feature matrices are shared across dimensions and classifiers.
  std::map<std::pair<std::size_t, FeatureSet>, FeatureMatrix> feature_cache;
  for (std::size_t p = 0; p < ds.participants.size(); ++p)
    for (FeatureSet set : config.feature_sets)
      feature_cache[{p, set}] =
          assemble_feature_matrix(ds.participants[p].trials, set, config.feature_config);

  std::vector<WorkUnit> units;
  for (std::size_t p = 0; p < ds.participants.size(); ++p)
    for (Dimension dim : config.dimensions)
      for (FeatureSet set : config.feature_sets)
        for (std::size_t c = 0; c < config.classifiers.size(); ++c)
          units.push_back({p, dim, set, c});

  std::vector<ExperimentResult> results(units.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= units.size()) break;
      try {
        results[i] = run_unit(config, ds, feature_cache.at({units[i].participant, units[i].set}),
                              units[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure = e.what();
        failed.store(true);
      }
    }
  };

  const int n_threads = std::max(1, jobs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("run_experiment: " + failure);
  return results;
}

ExperimentSummary aggregate(const std::vector<ExperimentResult>& results, double alpha) {
  if (results.empty()) throw std::invalid_argument("aggregate: empty results");

  ExperimentSummary summary;

  // Preserve first-appearance order of (dimension, set, classifier) groups.
  std::vector<std::tuple<Dimension, FeatureSet, std::string>> group_order;
  std::map<std::tuple<Dimension, FeatureSet, std::string>, std::vector<const ExperimentResult*>>
      groups;
  for (const auto& r : results) {
    const auto key = std::make_tuple(r.dimension, r.feature_set, r.classifier);
    if (!groups.count(key)) group_order.push_back(key);
    groups[key].push_back(&r);
  }

  for (const auto& key : group_order) {
    const auto& members = groups.at(key);
    SummaryRow row;
    std::tie(row.dimension, row.feature_set, row.classifier) = key;
    row.n = members.size();
    for (const auto* r : members) {
      row.mean_accuracy += r->accuracy;
      row.mean_balanced_accuracy += r->balanced_accuracy;
      row.mean_ci_low += r->bacc_ci_low;
      row.mean_micro_f1 += r->micro_f1;
      row.mean_macro_f1 += r->macro_f1;
      if (r->above_chance) ++row.n_above_chance;
    }
    const double n = static_cast<double>(row.n);
    row.mean_accuracy /= n;
    row.mean_balanced_accuracy /= n;
    row.mean_ci_low /= n;
    row.mean_micro_f1 /= n;
    row.mean_macro_f1 /= n;
    summary.rows.push_back(row);
  }

  // Group-level posterior for the best feature set per dimension.
  std::vector<Dimension> dims_seen;
  for (const auto& row : summary.rows)
    if (std::find(dims_seen.begin(), dims_seen.end(), row.dimension) == dims_seen.end())
      dims_seen.push_back(row.dimension);

  for (Dimension dim : dims_seen) {
    const SummaryRow* best = nullptr;
    for (const auto& row : summary.rows)
      if (row.dimension == dim &&
          (!best || row.mean_balanced_accuracy > best->mean_balanced_accuracy))
        best = &row;
    const auto& members =
        groups.at(std::make_tuple(dim, best->feature_set, best->classifier));
    long n_above = 0;
    for (const auto* r : members)
      if (r->above_chance) ++n_above;
    DimensionGroupStats gs{dim, best->feature_set,
                           group_proportion_posterior(n_above,
                                                      static_cast<long>(members.size()), alpha)};
    summary.group_stats.push_back(gs);
  }

  // Pairwise dimension comparison on the per-record balanced accuracies.
  auto bacc_vector = [&](Dimension dim) {
    std::vector<double> v;
    for (const auto& r : results) {
      const bool degenerate =
          std::find(r.quality_flags.begin(), r.quality_flags.end(), "degenerate_single_class") !=
          r.quality_flags.end();
      if (r.dimension == dim && !degenerate) v.push_back(r.balanced_accuracy);
    }
    return v;
  };
  for (std::size_t i = 0; i < dims_seen.size(); ++i) {
    for (std::size_t j = i + 1; j < dims_seen.size(); ++j) {
      const auto a = bacc_vector(dims_seen[i]);
      const auto b = bacc_vector(dims_seen[j]);
      if (a.size() < 2 || b.size() < 2) continue;
      summary.ttests.push_back({dims_seen[i], dims_seen[j], two_sample_ttest(a, b)});
    }
  }
  return summary;
}

}  // namespace abci
