#pragma once

#include "abci/cross_validation.hpp"
#include "abci/feature_sets.hpp"
#include "abci/manifest.hpp"
#include "abci/posterior.hpp"

#include <filesystem>

namespace abci {

struct FirSettings {
  bool enabled = true;
  double low_hz = 4.0;
  double high_hz = 45.0;
  int order = 129;
};

struct ExperimentConfig {
  std::filesystem::path manifest_path;
  std::vector<FeatureSet> feature_sets;
  std::vector<ClassifierDescriptor> classifiers;
  std::vector<Dimension> dimensions = {Dimension::valence, Dimension::arousal,
                                       Dimension::dominance};
  CvScheme cv;
  double alpha = 0.05;
  FeatureConfig feature_config;
  FirSettings fir;
  double holdout_fraction = 0.15;  // SVM grid selection
  bool permute_labels = false;     // null-calibration runs
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
};

// JSON config; unknown keys rejected.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ExperimentResult {
  std::string participant_id;
  Dimension dimension;
  FeatureSet feature_set;
  std::string classifier;
  std::size_t n_trials = 0;
  double class_bias = 0.0;
  double accuracy = 0.0;
  double balanced_accuracy = 0.0;
  double bacc_ci_low = 0.0;
  double bacc_ci_high = 1.0;
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
  bool above_chance = false;
  std::vector<std::string> quality_flags;
};

// One record per participant x dimension x feature set x classifier.
// Degenerate units (single-class labels) yield flagged records, not aborts.
// Deterministic given (manifest, config, seed) regardless of jobs.
std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config, int jobs = 1);

struct SummaryRow {
  Dimension dimension;
  FeatureSet feature_set;
  std::string classifier;
  std::size_t n = 0;
  double mean_accuracy = 0.0;
  double mean_balanced_accuracy = 0.0;
  double mean_ci_low = 0.0;
  double mean_micro_f1 = 0.0;
  double mean_macro_f1 = 0.0;
  std::size_t n_above_chance = 0;
};

struct DimensionGroupStats {
  Dimension dimension;
  FeatureSet best_feature_set;
  GroupSignificance significance;
};

struct PairwiseTTest {
  Dimension a;
  Dimension b;
  TTestResult result;
};

struct ExperimentSummary {
  std::vector<SummaryRow> rows;
  std::vector<DimensionGroupStats> group_stats;
  std::vector<PairwiseTTest> ttests;
};

ExperimentSummary aggregate(const std::vector<ExperimentResult>& results, double alpha);

// Per-unit RNG seed: a stable hash of (global seed, unit identity), so the
// execution order of work units cannot reorder randomness.
std::uint64_t unit_seed(std::uint64_t global_seed, const std::string& participant_id,
                        Dimension dimension, FeatureSet set, const std::string& classifier);

}  // namespace abci
