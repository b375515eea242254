#include "abci/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace abci {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += "|";
    std::string clean = f;
    for (char& c : clean)
      if (c == ',' || c == '|') c = ';';
    out += clean;
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: identical bytes everywhere
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void emit_report(const std::vector<ExperimentResult>& results,
                 const ExperimentSummary& summary,
                 const std::filesystem::path& output_dir) {
  std::filesystem::create_directories(output_dir);
  if (!std::filesystem::is_directory(output_dir))
    throw std::runtime_error("not a directory: " + output_dir.string());

  {
    auto out = open_out(output_dir / "results.csv");
    out << "participant_id,dimension,feature_set,classifier,n_trials,class_bias,accuracy,"
           "balanced_accuracy,bacc_ci_low,bacc_ci_high,micro_f1,macro_f1,above_chance,"
           "quality_flags\n";
    for (const auto& r : results) {
      out << r.participant_id << ',' << dimension_name(r.dimension) << ','
          << feature_set_name(r.feature_set) << ',' << r.classifier << ',' << r.n_trials << ','
          << fmt(r.class_bias) << ',' << fmt(r.accuracy) << ',' << fmt(r.balanced_accuracy)
          << ',' << fmt(r.bacc_ci_low) << ',' << fmt(r.bacc_ci_high) << ',' << fmt(r.micro_f1)
          << ',' << fmt(r.macro_f1) << ',' << (r.above_chance ? "true" : "false") << ','
          << join_flags(r.quality_flags) << '\n';
    }
  }

  {
    auto out = open_out(output_dir / "summary.csv");
    out << "dimension,feature_set,classifier,n,mean_accuracy,mean_balanced_accuracy,"
           "mean_bacc_ci_low,mean_micro_f1,mean_macro_f1,n_above_chance\n";
    for (const auto& row : summary.rows) {
      out << dimension_name(row.dimension) << ',' << feature_set_name(row.feature_set) << ','
          << row.classifier << ',' << row.n << ',' << fmt(row.mean_accuracy) << ','
          << fmt(row.mean_balanced_accuracy) << ',' << fmt(row.mean_ci_low) << ','
          << fmt(row.mean_micro_f1) << ',' << fmt(row.mean_macro_f1) << ','
          << row.n_above_chance << '\n';
    }
  }

  {
    nlohmann::ordered_json j;
    for (const auto& gs : summary.group_stats) {
      j["dimensions"][dimension_name(gs.dimension)] = {
          {"best_feature_set", feature_set_name(gs.best_feature_set)},
          {"n", gs.significance.n_participants},
          {"n_above", gs.significance.n_above_chance},
          {"proportion", gs.significance.proportion},
          {"ci_low", gs.significance.interval.low},
          {"ci_high", gs.significance.interval.high},
      };
    }
    j["ttests"] = nlohmann::ordered_json::array();
    for (const auto& tt : summary.ttests) {
      j["ttests"].push_back({
          {"dims", {dimension_name(tt.a), dimension_name(tt.b)}},
          {"t", tt.result.t},
          {"p", tt.result.p},
          {"reject_at_0.05", tt.result.reject_at_05},
      });
    }
    auto out = open_out(output_dir / "group_stats.json");
    out << j.dump(2) << '\n';
  }

  {
    auto out = open_out(output_dir / "figure4_data.csv");
    out << "feature_set,dimension,accuracy,bacc,micro_f1,macro_f1\n";
    for (const auto& row : summary.rows) {
      out << feature_set_name(row.feature_set) << ',' << dimension_name(row.dimension) << ','
          << fmt(row.mean_accuracy) << ',' << fmt(row.mean_balanced_accuracy) << ','
          << fmt(row.mean_micro_f1) << ',' << fmt(row.mean_macro_f1) << '\n';
    }
  }
}

std::vector<ExperimentResult> read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");

  std::vector<ExperimentResult> results;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!ss && line.back() == ',') cells.push_back("");
    if (cells.size() < 13 || cells.size() > 14)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected 14 columns");
    ExperimentResult r;
    r.participant_id = cells[0];
    r.dimension = parse_dimension(cells[1]);
    r.feature_set = parse_feature_set(cells[2]);
    r.classifier = cells[3];
    r.n_trials = std::stoul(cells[4]);
    r.class_bias = std::stod(cells[5]);
    r.accuracy = std::stod(cells[6]);
    r.balanced_accuracy = std::stod(cells[7]);
    r.bacc_ci_low = std::stod(cells[8]);
    r.bacc_ci_high = std::stod(cells[9]);
    r.micro_f1 = std::stod(cells[10]);
    r.macro_f1 = std::stod(cells[11]);
    r.above_chance = cells[12] == "true";
    if (cells.size() == 14 && !cells[13].empty()) {
      std::stringstream fs(cells[13]);
      std::string flag;
      while (std::getline(fs, flag, '|')) r.quality_flags.push_back(flag);
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace abci
