#pragma once

#include <cstdint>
#include <filesystem>

namespace abci {

struct SynthOptions {
  int participants = 16;
  int trials_per_participant = 60;
  double snr_db = 10.0;
  std::uint64_t seed = 0;
  double sample_rate_hz = 128.0;
  std::size_t samples_per_trial = 512;
  double planted_freq_hz = 20.0;  // inside the beta band
};

// Planted-signal benchmark dataset: white-noise EEG with a beta-band
// sinusoid whose amplitude is 10 dB higher for high-affect trials. Labels
// (shared across the three dimensions) are recoverable from beta band
// power. Writes manifest.json plus one CSV per trial; returns the manifest
// path.
std::filesystem::path generate_synthetic_dataset(const std::filesystem::path& out_dir,
                                                 const SynthOptions& options);

}  // namespace abci
