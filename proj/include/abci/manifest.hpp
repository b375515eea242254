#pragma once

#include "abci/dataset.hpp"
#include "abci/types.hpp"

#include <filesystem>
#include <map>

namespace abci {

struct TrialEntry {
  std::string trial_id;
  std::string signal_path;  // relative to the manifest directory
  std::map<Dimension, double> ratings;
};

struct ParticipantEntry {
  std::string participant_id;
  std::vector<TrialEntry> trials;
};

struct DatasetManifest {
  std::string name;
  double sample_rate_hz = 0.0;
  std::vector<std::string> channel_labels;
  int rating_scale_max = 9;
  std::map<std::string, double> split_points;  // participant overrides
  std::vector<ParticipantEntry> participants;
  std::filesystem::path base_dir;

  // 5 for the 9-point scale, 3 for the 5-point scale, unless overridden.
  double split_point_for(const std::string& participant_id) const;
};

struct LoadedParticipant {
  std::string participant_id;
  std::vector<TrialRecording> trials;
  std::map<Dimension, std::vector<double>> ratings;  // aligned with trials
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<LoadedParticipant> participants;
};

DatasetManifest load_manifest(const std::filesystem::path& path);

// Loads every trial signal and validates shapes, lengths, and ratings.
// Errors name the offending trial or file.
Dataset load_dataset(const DatasetManifest& manifest, std::size_t min_samples);
Dataset load_dataset(const std::filesystem::path& manifest_path, std::size_t min_samples);

// CSV signal matrix: rows = time samples, columns = channels, no header.
std::vector<std::vector<double>> read_signal_csv(const std::filesystem::path& path,
                                                 std::size_t n_channels);

}  // namespace abci
