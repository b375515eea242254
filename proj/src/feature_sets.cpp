#include "abci/feature_sets.hpp"

#include "abci/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abci {

namespace {

// Everything below works off per-channel spectra computed once per trial.
struct TrialSpectra {
  const TrialRecording* trial;
  std::vector<Spectrum> spectra;  // per channel
  const FeatureConfig* config;

  const Spectrum& at(const std::string& label) const {
    return spectra[trial->channel_index(label)];
  }
};

// Clips the band to the spectrum's coverage; notes the truncation.
double clipped_band_power(const Spectrum& sp, FrequencyBand band, const std::string& channel,
                          FeatureVector& out) {
  if (band.high_hz > sp.max_frequency()) {
    out.notes.push_back(std::string(band_name_string(band.name)) + ":" + channel +
                        " truncated at " + std::to_string(sp.max_frequency()) + " Hz");
    band.high_hz = sp.max_frequency();
  }
  return band_power(sp, band);
}

std::vector<std::string> frontal_channels(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::string> chans;
  for (const auto& [left, right] : pairs) {
    for (const auto& c : {left, right})
      if (std::find(chans.begin(), chans.end(), c) == chans.end()) chans.push_back(c);
  }
  return chans;
}

void append(FeatureVector& out, const std::string& name, double value) {
  out.names.push_back(name);
  out.values.push_back(value);
}

void add_pair_asymmetry(const TrialSpectra& ts, const FrequencyBand& band,
                        const std::string& prefix, FeatureVector& out) {
  for (const auto& [left, right] : ts.config->pairs_for(*ts.trial)) {
    const double rp = clipped_band_power(ts.at(right), band, right, out);
    const double lp = clipped_band_power(ts.at(left), band, left, out);
    append(out, prefix + ":" + right + "/" + left,
           asymmetry_index(rp, lp, AsymmetryForm::log_ratio));
  }
}

void add_fai(const TrialSpectra& ts, FeatureVector& out) {
  const FrequencyBand broad{BandName::broadband, ts.config->broadband_low_hz,
                            ts.config->broadband_high_hz};
  double right_sum = 0.0, left_sum = 0.0;
  for (const auto& [left, right] : ts.config->pairs_for(*ts.trial)) {
    right_sum += clipped_band_power(ts.at(right), broad, right, out);
    left_sum += clipped_band_power(ts.at(left), broad, left, out);
  }
  append(out, "FAI", asymmetry_index(right_sum, left_sum, AsymmetryForm::log_ratio));
}

void add_tbr(const TrialSpectra& ts, const FrequencyBand& beta, const std::string& prefix,
             FeatureVector& out) {
  for (const auto& ch : frontal_channels(ts.config->pairs_for(*ts.trial))) {
    const double tp = clipped_band_power(ts.at(ch), ts.config->theta, ch, out);
    const double bp = clipped_band_power(ts.at(ch), beta, ch, out);
    append(out, prefix + ":" + ch, theta_beta_ratio(tp, bp));
  }
}

void add_band_power_all_channels(const TrialSpectra& ts, const FrequencyBand& band,
                                 const std::string& prefix, FeatureVector& out) {
  for (std::size_t c = 0; c < ts.trial->channel_count(); ++c) {
    const auto& label = ts.trial->channel_labels[c];
    append(out, prefix + ":" + label, clipped_band_power(ts.spectra[c], band, label, out));
  }
}

void add_hjorth(const TrialSpectra& ts, FeatureVector& out) {
  for (std::size_t c = 0; c < ts.trial->channel_count(); ++c) {
    const auto& label = ts.trial->channel_labels[c];
    append(out, "HjorthMobility:" + label, hjorth_mobility(ts.trial->samples[c]));
    append(out, "HjorthComplexity:" + label, hjorth_complexity(ts.trial->samples[c]));
  }
}

void add_entropy(const TrialSpectra& ts, FeatureVector& out) {
  for (std::size_t c = 0; c < ts.trial->channel_count(); ++c) {
    const auto& label = ts.trial->channel_labels[c];
    append(out, "SpectralEntropy:" + label,
           spectral_entropy(ts.spectra[c], ts.config->entropy_low_hz, ts.config->entropy_high_hz));
  }
}

void add_psd_bins(const TrialSpectra& ts, FeatureVector& out) {
  // 1 Hz-wide band powers across the broadband analysis range.
  const int lo = static_cast<int>(std::ceil(ts.config->broadband_low_hz));
  const int hi = static_cast<int>(std::floor(ts.config->broadband_high_hz));
  for (std::size_t c = 0; c < ts.trial->channel_count(); ++c) {
    const auto& label = ts.trial->channel_labels[c];
    for (int f = lo; f < hi; ++f) {
      FrequencyBand bin{BandName::broadband, static_cast<double>(f), static_cast<double>(f + 1)};
      append(out, "PSD:" + label + ":" + std::to_string(f) + "Hz",
             clipped_band_power(ts.spectra[c], bin, label, out));
    }
  }
}

void add_baratio(const TrialSpectra& ts, FeatureVector& out) {
  for (std::size_t c = 0; c < ts.trial->channel_count(); ++c) {
    const auto& label = ts.trial->channel_labels[c];
    const double b = clipped_band_power(ts.spectra[c], ts.config->beta1, label, out) +
                     clipped_band_power(ts.spectra[c], ts.config->beta2, label, out);
    const double a = clipped_band_power(ts.spectra[c], ts.config->alpha, label, out);
    if (b <= 0.0 || a <= 0.0)
      throw std::invalid_argument("BARatio: nonpositive band power on " + label);
    append(out, "BARatio:" + label, std::log(b / a));
  }
}

void add_set(const TrialSpectra& ts, FeatureSet set, FeatureVector& out) {
  const FrequencyBand broad{BandName::broadband, ts.config->broadband_low_hz,
                            ts.config->broadband_high_hz};
  const FrequencyBand beta_full{BandName::beta1, ts.config->beta1.low_hz,
                                ts.config->beta2.high_hz};
  switch (set) {
    case FeatureSet::PASI:
      add_pair_asymmetry(ts, broad, "PASI", out);
      break;
    case FeatureSet::FAI:
      add_fai(ts, out);
      break;
    case FeatureSet::TBR1:
      add_tbr(ts, ts.config->beta1, "TBR1", out);
      break;
    case FeatureSet::TBR2:
      add_tbr(ts, ts.config->beta2, "TBR2", out);
      break;
    case FeatureSet::ThetaP:
      add_band_power_all_channels(ts, ts.config->theta, "ThetaP", out);
      break;
    case FeatureSet::AlphaP:
      add_band_power_all_channels(ts, ts.config->alpha, "AlphaP", out);
      break;
    case FeatureSet::BetaP:
      add_band_power_all_channels(ts, beta_full, "BetaP", out);
      break;
    case FeatureSet::GammaP:
      add_band_power_all_channels(ts, ts.config->gamma, "GammaP", out);
      break;
    case FeatureSet::TBR_C:
      add_set(ts, FeatureSet::TBR1, out);
      add_set(ts, FeatureSet::TBR2, out);
      break;
    case FeatureSet::TABG:
      add_set(ts, FeatureSet::ThetaP, out);
      add_set(ts, FeatureSet::AlphaP, out);
      add_set(ts, FeatureSet::BetaP, out);
      add_set(ts, FeatureSet::GammaP, out);
      break;
    case FeatureSet::Hjorth:
      add_hjorth(ts, out);
      break;
    case FeatureSet::PASI_FASI:
      add_pair_asymmetry(ts, broad, "PASI", out);
      add_pair_asymmetry(ts, ts.config->alpha, "FASI", out);
      break;
    case FeatureSet::AvgEntropy:
      add_entropy(ts, out);
      break;
    case FeatureSet::PSD:
      add_psd_bins(ts, out);
      break;
    case FeatureSet::BARatio:
      add_baratio(ts, out);
      break;
    case FeatureSet::All:
    case FeatureSet::AllPCA:
      // Every base set once; the composites TBR-C/TABG would only repeat them.
      add_pair_asymmetry(ts, broad, "PASI", out);
      add_fai(ts, out);
      add_pair_asymmetry(ts, ts.config->alpha, "FASI", out);
      add_tbr(ts, ts.config->beta1, "TBR1", out);
      add_tbr(ts, ts.config->beta2, "TBR2", out);
      add_band_power_all_channels(ts, ts.config->theta, "ThetaP", out);
      add_band_power_all_channels(ts, ts.config->alpha, "AlphaP", out);
      add_band_power_all_channels(ts, beta_full, "BetaP", out);
      add_band_power_all_channels(ts, ts.config->gamma, "GammaP", out);
      add_hjorth(ts, out);
      add_entropy(ts, out);
      add_psd_bins(ts, out);
      add_baratio(ts, out);
      break;
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> FeatureConfig::pairs_for(
    const TrialRecording& trial) const {
  auto pairs = frontal_pairs;
  if (add_fp_pair_when_present && trial.has_channel("Fp1") && trial.has_channel("Fp2")) {
    bool already = false;
    for (const auto& [l, r] : pairs)
      if (l == "Fp1" && r == "Fp2") already = true;
    if (!already) pairs.emplace_back("Fp1", "Fp2");
  }
  if (pairs.empty()) throw std::invalid_argument("FeatureConfig: no frontal pairs configured");
  return pairs;
}

FeatureVector assemble_feature_set(const TrialRecording& trial, FeatureSet set,
                                   const FeatureConfig& config) {
  trial.validate();
  TrialSpectra ts{&trial, {}, &config};
  ts.spectra.reserve(trial.channel_count());
  for (const auto& ch : trial.samples)
    ts.spectra.push_back(welch_psd(ch, trial.sample_rate_hz, config.welch));

  FeatureVector out;
  out.feature_set = set;
  out.trial_id = trial.trial_id;
  add_set(ts, set, out);

  for (double v : out.values)
    if (!std::isfinite(v))
      throw std::runtime_error("assemble_feature_set: non-finite feature in trial " +
                               trial.trial_id);
  return out;
}

FeatureMatrix assemble_feature_matrix(const std::vector<TrialRecording>& trials,
                                      FeatureSet set, const FeatureConfig& config) {
  FeatureMatrix m;
  for (const auto& trial : trials) {
    FeatureVector fv = assemble_feature_set(trial, set, config);
    if (m.rows.empty()) {
      m.column_names = fv.names;
    } else if (fv.names != m.column_names) {
      throw std::runtime_error("assemble_feature_matrix: inconsistent feature names at trial " +
                               trial.trial_id);
    }
    m.rows.push_back(std::move(fv.values));
    m.trial_ids.push_back(trial.trial_id);
  }
  return m;
}

}  // namespace abci
