#include "abci/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

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

double DatasetManifest::split_point_for(const std::string& participant_id) const {
  const auto it = split_points.find(participant_id);
  if (it != split_points.end()) return it->second;
  return rating_scale_max == 9 ? 5.0 : 3.0;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("manifest parse error in " + path.string() + ": " + e.what());
  }

  require_keys(j, {"name", "sample_rate_hz", "channel_labels", "rating_scale_max", "participants"},
               {"split_points"}, "manifest");

  DatasetManifest m;
  m.base_dir = path.parent_path();
  m.name = j.at("name").get<std::string>();
  m.sample_rate_hz = j.at("sample_rate_hz").get<double>();
  m.channel_labels = j.at("channel_labels").get<std::vector<std::string>>();
  m.rating_scale_max = j.at("rating_scale_max").get<int>();
  if (m.rating_scale_max != 9 && m.rating_scale_max != 5)
    throw std::runtime_error("manifest: rating_scale_max must be 9 or 5");
  if (m.sample_rate_hz <= 0.0) throw std::runtime_error("manifest: sample_rate_hz must be > 0");
  if (m.channel_labels.empty()) throw std::runtime_error("manifest: no channels");

  if (j.contains("split_points")) {
    for (const auto& [pid, split] : j.at("split_points").items()) {
      const double s = split.get<double>();
      if (s < 1.0 || s > static_cast<double>(m.rating_scale_max))
        throw std::runtime_error("manifest: split override for " + pid + " outside scale");
      m.split_points[pid] = s;
    }
  }

  for (const auto& pj : j.at("participants")) {
    require_keys(pj, {"participant_id", "trials"}, {}, "participant");
    ParticipantEntry p;
    p.participant_id = pj.at("participant_id").get<std::string>();
    for (const auto& tj : pj.at("trials")) {
      require_keys(tj, {"trial_id", "signal_path", "ratings"}, {}, "trial");
      TrialEntry t;
      t.trial_id = tj.at("trial_id").get<std::string>();
      t.signal_path = tj.at("signal_path").get<std::string>();
      const json& rj = tj.at("ratings");
      require_keys(rj, {"valence", "arousal", "dominance"}, {}, "ratings of " + t.trial_id);
      for (Dimension d : {Dimension::valence, Dimension::arousal, Dimension::dominance}) {
        const double r = rj.at(dimension_name(d)).get<double>();
        if (r < 1.0 || r > static_cast<double>(m.rating_scale_max))
          throw std::runtime_error("trial " + t.trial_id + ": rating " + std::to_string(r) +
                                   " outside [1," + std::to_string(m.rating_scale_max) + "]");
        t.ratings[d] = r;
      }
      p.trials.push_back(std::move(t));
    }
    m.participants.push_back(std::move(p));
  }
  return m;
}

std::vector<std::vector<double>> read_signal_csv(const std::filesystem::path& path,
                                                 std::size_t n_channels) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open signal file: " + path.string());
  std::vector<std::vector<double>> channels(n_channels);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= n_channels)
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                 ": more columns than channels");
      try {
        channels[col].push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                 ": bad number \"" + cell + "\"");
      }
      ++col;
    }
    if (col != n_channels)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(n_channels) + " columns, got " +
                               std::to_string(col));
  }
  return channels;
}

Dataset load_dataset(const DatasetManifest& manifest, std::size_t min_samples) {
  Dataset ds;
  ds.manifest = manifest;
  for (const auto& pe : manifest.participants) {
    LoadedParticipant lp;
    lp.participant_id = pe.participant_id;
    for (const auto& te : pe.trials) {
      const auto path = manifest.base_dir / te.signal_path;
      if (!std::filesystem::exists(path))
        throw std::runtime_error("trial " + te.trial_id + ": missing signal file " +
                                 path.string());
      TrialRecording trial;
      trial.trial_id = te.trial_id;
      trial.participant_id = pe.participant_id;
      trial.sample_rate_hz = manifest.sample_rate_hz;
      trial.channel_labels = manifest.channel_labels;
      trial.samples = read_signal_csv(path, manifest.channel_labels.size());
      trial.validate();
      if (trial.sample_count() < min_samples)
        throw std::runtime_error("trial " + te.trial_id + ": only " +
                                 std::to_string(trial.sample_count()) + " samples, need >= " +
                                 std::to_string(min_samples));
      lp.trials.push_back(std::move(trial));
      for (Dimension d : {Dimension::valence, Dimension::arousal, Dimension::dominance})
        lp.ratings[d].push_back(te.ratings.at(d));
    }
    ds.participants.push_back(std::move(lp));
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& manifest_path, std::size_t min_samples) {
  return load_dataset(load_manifest(manifest_path), min_samples);
}

}  // namespace abci
