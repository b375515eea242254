#pragma once

#include "abci/types.hpp"
#include "abci/welch.hpp"

#include <utility>

namespace abci {

// Knobs for feature assembly. Defaults follow the band table and the
// (F3,F4)/(F7,F8) frontal pairing; (Fp1,Fp2) is added when both are present.
struct FeatureConfig {
  std::vector<std::pair<std::string, std::string>> frontal_pairs = {
      {"F3", "F4"}, {"F7", "F8"}};
  bool add_fp_pair_when_present = true;

  double broadband_low_hz = 4.0;
  double broadband_high_hz = 45.0;
  double entropy_low_hz = 4.0;
  double entropy_high_hz = 45.0;

  FrequencyBand theta = standard_band(BandName::theta);
  FrequencyBand alpha = standard_band(BandName::alpha);
  FrequencyBand beta1 = standard_band(BandName::beta1);
  FrequencyBand beta2 = standard_band(BandName::beta2);
  FrequencyBand gamma = standard_band(BandName::gamma);

  WelchConfig welch;

  // Frontal pairs actually used for a montage: the configured pairs, plus
  // (Fp1,Fp2) when enabled and present.
  std::vector<std::pair<std::string, std::string>> pairs_for(const TrialRecording& trial) const;
};

// Per-trial scalar features for one named set. The trial is expected to be
// bandpass-filtered already. "All-PCA" returns the "All" vector; the PCA
// reduction is fit on training folds at the dataset level.
FeatureVector assemble_feature_set(const TrialRecording& trial, FeatureSet set,
                                   const FeatureConfig& config);

// Stack one feature set across trials into a matrix (row order = input order).
FeatureMatrix assemble_feature_matrix(const std::vector<TrialRecording>& trials,
                                      FeatureSet set, const FeatureConfig& config);

}  // namespace abci
