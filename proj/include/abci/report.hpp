#pragma once

#include "abci/experiment.hpp"

namespace abci {

// Writes results.csv, summary.csv, group_stats.json and figure4_data.csv.
// Byte-stable across runs with the same inputs.
void emit_report(const std::vector<ExperimentResult>& results,
                 const ExperimentSummary& summary,
                 const std::filesystem::path& output_dir);

// Reads a results.csv written by emit_report.
std::vector<ExperimentResult> read_results_csv(const std::filesystem::path& path);

}  // namespace abci
