#include "abci/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace abci {

std::filesystem::path generate_synthetic_dataset(const std::filesystem::path& out_dir,
                                                 const SynthOptions& opt) {
  if (opt.participants < 1 || opt.trials_per_participant < 2)
    throw std::invalid_argument("generate_synthetic_dataset: need >= 1 participant, >= 2 trials");
  std::filesystem::create_directories(out_dir / "signals");

  const std::vector<std::string> channels = {"F3", "F4", "F7", "F8"};
  // Sinusoid power A^2/2 relative to unit-variance noise sets the SNR; low
  // trials sit 10 dB below high trials.
  const double amp_high = std::sqrt(2.0 * std::pow(10.0, opt.snr_db / 10.0));
  const double amp_low = amp_high * std::pow(10.0, -0.5);

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution high_trial(0.5);
  std::uniform_int_distribution<int> high_rating(5, 9), low_rating(1, 4);

  nlohmann::ordered_json manifest;
  manifest["name"] = "synthetic-planted-beta";
  manifest["sample_rate_hz"] = opt.sample_rate_hz;
  manifest["channel_labels"] = channels;
  manifest["rating_scale_max"] = 9;
  manifest["participants"] = nlohmann::ordered_json::array();

  for (int p = 0; p < opt.participants; ++p) {
    char pid[16];
    std::snprintf(pid, sizeof(pid), "p%02d", p + 1);
    nlohmann::ordered_json pj;
    pj["participant_id"] = pid;
    pj["trials"] = nlohmann::ordered_json::array();

    for (int t = 0; t < opt.trials_per_participant; ++t) {
      char tid[32];
      std::snprintf(tid, sizeof(tid), "%s_t%03d", pid, t + 1);
      const bool high = high_trial(rng);
      const double amp = high ? amp_high : amp_low;
      const int rating = high ? high_rating(rng) : low_rating(rng);

      const std::string rel = std::string("signals/") + tid + ".csv";
      std::ofstream out(out_dir / rel, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + (out_dir / rel).string());

      std::vector<double> ch_phase(channels.size());
      for (auto& ph : ch_phase) ph = phase(rng);
      const double omega = 2.0 * std::numbers::pi * opt.planted_freq_hz / opt.sample_rate_hz;
      char buf[40];
      for (std::size_t i = 0; i < opt.samples_per_trial; ++i) {
        for (std::size_t c = 0; c < channels.size(); ++c) {
          const double v = amp * std::sin(omega * static_cast<double>(i) + ch_phase[c]) +
                           noise(rng);
          std::snprintf(buf, sizeof(buf), "%.6f", v);
          out << buf << (c + 1 < channels.size() ? "," : "\n");
        }
      }

      nlohmann::ordered_json tj;
      tj["trial_id"] = tid;
      tj["signal_path"] = rel;
      tj["ratings"] = {{"valence", rating}, {"arousal", rating}, {"dominance", rating}};
      pj["trials"].push_back(tj);
    }
    manifest["participants"].push_back(pj);
  }

  const auto manifest_path = out_dir / "manifest.json";
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + manifest_path.string());
  out << manifest.dump(2) << '\n';
  return manifest_path;
}

}  // namespace abci
