#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace abci {

// One stimulus epoch of multichannel EEG, microvolts.
struct TrialRecording {
  std::vector<std::vector<double>> samples;  // [channel][time]
  double sample_rate_hz = 0.0;
  std::vector<std::string> channel_labels;   // 10-20 names, unique
  std::string trial_id;
  std::string participant_id;

  std::size_t channel_count() const { return samples.size(); }
  std::size_t sample_count() const { return samples.empty() ? 0 : samples[0].size(); }

  // Throws std::invalid_argument on shape/label violations.
  void validate() const;

  // Index of a channel label, or throws naming the missing channel.
  std::size_t channel_index(const std::string& label) const;
  bool has_channel(const std::string& label) const;
};

// One-sided PSD on a uniform frequency grid starting at 0.
struct Spectrum {
  std::vector<double> frequencies_hz;
  std::vector<double> psd;       // power per Hz
  double resolution_hz = 0.0;

  double max_frequency() const { return frequencies_hz.empty() ? 0.0 : frequencies_hz.back(); }
};

enum class BandName { theta, alpha, beta1, beta2, gamma, broadband };

struct FrequencyBand {
  BandName name;
  double low_hz;
  double high_hz;
};

// Canonical band edges. broadband spans the 4-45 Hz analysis range.
FrequencyBand standard_band(BandName name);

const char* band_name_string(BandName name);

// The seventeen feature-set identifiers.
enum class FeatureSet {
  PASI, FAI, TBR1, TBR2, ThetaP, AlphaP, BetaP, GammaP,
  TBR_C, TABG, Hjorth, PASI_FASI, AvgEntropy, PSD, BARatio,
  All, AllPCA
};

const char* feature_set_name(FeatureSet set);
FeatureSet parse_feature_set(const std::string& name);  // throws on unknown name
std::vector<FeatureSet> all_feature_sets();

struct FeatureVector {
  std::vector<double> values;
  std::vector<std::string> names;
  FeatureSet feature_set = FeatureSet::All;
  std::string trial_id;
  std::vector<std::string> notes;  // e.g. band truncation at the Nyquist edge
};

// Row-major feature matrix with shared column names.
struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> column_names;
  std::vector<std::string> trial_ids;

  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const { return rows.empty() ? column_names.size() : rows[0].size(); }
};

}  // namespace abci
