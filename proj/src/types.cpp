#include "abci/types.hpp"

#include <set>
#include <stdexcept>

namespace abci {

void TrialRecording::validate() const {
  if (samples.empty()) throw std::invalid_argument("trial " + trial_id + ": no channels");
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("trial " + trial_id + ": sample_rate_hz must be > 0");
  if (channel_labels.size() != samples.size())
    throw std::invalid_argument("trial " + trial_id + ": channel label count != channel count");
  const std::size_t n = samples[0].size();
  if (n < 2) throw std::invalid_argument("trial " + trial_id + ": channels need >= 2 samples");
  for (const auto& ch : samples)
    if (ch.size() != n) throw std::invalid_argument("trial " + trial_id + ": ragged channel lengths");
  std::set<std::string> seen(channel_labels.begin(), channel_labels.end());
  if (seen.size() != channel_labels.size())
    throw std::invalid_argument("trial " + trial_id + ": duplicate channel labels");
}

std::size_t TrialRecording::channel_index(const std::string& label) const {
  for (std::size_t i = 0; i < channel_labels.size(); ++i)
    if (channel_labels[i] == label) return i;
  throw std::invalid_argument("trial " + trial_id + ": missing channel " + label);
}

bool TrialRecording::has_channel(const std::string& label) const {
  for (const auto& l : channel_labels)
    if (l == label) return true;
  return false;
}

FrequencyBand standard_band(BandName name) {
  switch (name) {
    case BandName::theta:     return {name, 4.0, 8.0};
    case BandName::alpha:     return {name, 8.0, 12.0};
    case BandName::beta1:     return {name, 12.0, 18.0};
    case BandName::beta2:     return {name, 18.0, 30.0};
    case BandName::gamma:     return {name, 31.0, 63.0};
    case BandName::broadband: return {name, 4.0, 45.0};
  }
  throw std::invalid_argument("unknown band");
}

const char* band_name_string(BandName name) {
  switch (name) {
    case BandName::theta:     return "theta";
    case BandName::alpha:     return "alpha";
    case BandName::beta1:     return "beta1";
    case BandName::beta2:     return "beta2";
    case BandName::gamma:     return "gamma";
    case BandName::broadband: return "broadband";
  }
  return "?";
}

const char* feature_set_name(FeatureSet set) {
  switch (set) {
    case FeatureSet::PASI:       return "PASI";
    case FeatureSet::FAI:        return "FAI";
    case FeatureSet::TBR1:       return "TBR1";
    case FeatureSet::TBR2:       return "TBR2";
    case FeatureSet::ThetaP:     return "ThetaP";
    case FeatureSet::AlphaP:     return "AlphaP";
    case FeatureSet::BetaP:      return "BetaP";
    case FeatureSet::GammaP:     return "GammaP";
    case FeatureSet::TBR_C:      return "TBR-C";
    case FeatureSet::TABG:       return "TABG";
    case FeatureSet::Hjorth:     return "Hjorth";
    case FeatureSet::PASI_FASI:  return "PASI+FASI";
    case FeatureSet::AvgEntropy: return "Avg-Entropy";
    case FeatureSet::PSD:        return "PSD";
    case FeatureSet::BARatio:    return "BARatio";
    case FeatureSet::All:        return "All";
    case FeatureSet::AllPCA:     return "All-PCA";
  }
  return "?";
}

std::vector<FeatureSet> all_feature_sets() {
  return {FeatureSet::PASI, FeatureSet::FAI, FeatureSet::TBR1, FeatureSet::TBR2,
          FeatureSet::ThetaP, FeatureSet::AlphaP, FeatureSet::BetaP, FeatureSet::GammaP,
          FeatureSet::TBR_C, FeatureSet::TABG, FeatureSet::Hjorth, FeatureSet::PASI_FASI,
          FeatureSet::AvgEntropy, FeatureSet::PSD, FeatureSet::BARatio,
          FeatureSet::All, FeatureSet::AllPCA};
}

FeatureSet parse_feature_set(const std::string& name) {
  for (FeatureSet s : all_feature_sets())
    if (name == feature_set_name(s)) return s;
  throw std::invalid_argument("unknown feature set: " + name);
}

}  // namespace abci
