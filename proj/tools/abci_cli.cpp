#include "abci/experiment.hpp"
#include "abci/report.hpp"
#include "abci/synth.hpp"

#include <iostream>

#include <CLI11.hpp>

int main(int argc, char** argv) {
  CLI::App app{"EEG affect classification and balanced-accuracy evaluation"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a full experiment from a config file");
  std::string config_path;
  std::uint64_t seed_override = 0;
  int jobs = 1;
  run->add_option("--config", config_path, "Experiment config JSON")->required();
  run->add_option("--seed", seed_override, "Override the config seed");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  // report
  auto* report = app.add_subcommand("report", "Rebuild summaries from a results directory");
  std::string results_dir;
  report->add_option("--results", results_dir, "results.csv or its directory")->required();
  double report_alpha = 0.05;
  report->add_option("--alpha", report_alpha, "Credible-interval alpha");

  // validate
  auto* validate = app.add_subcommand("validate", "Validate a dataset manifest and its files");
  std::string manifest_path;
  validate->add_option("--manifest", manifest_path, "Manifest JSON")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a planted-signal benchmark dataset");
  std::string synth_out;
  abci::SynthOptions opt;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--participants", opt.participants, "Participant count");
  synth->add_option("--trials", opt.trials_per_participant, "Trials per participant");
  synth->add_option("--snr-db", opt.snr_db, "Planted sinusoid SNR in dB");
  synth->add_option("--seed", opt.seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      abci::ExperimentConfig cfg = abci::load_experiment_config(config_path);
      if (run->count("--seed") > 0) cfg.seed = seed_override;
      const auto results = abci::run_experiment(cfg, jobs);
      const auto summary = abci::aggregate(results, cfg.alpha);
      abci::emit_report(results, summary, cfg.output_dir);
      std::cout << "wrote " << results.size() << " records to " << cfg.output_dir.string()
                << "\n";
    } else if (report->parsed()) {
      std::filesystem::path dir(results_dir);
      if (std::filesystem::is_regular_file(dir)) dir = dir.parent_path();
      const auto results = abci::read_results_csv(dir / "results.csv");
      const auto summary = abci::aggregate(results, report_alpha);
      abci::emit_report(results, summary, dir);
      std::cout << "rebuilt summaries for " << results.size() << " records\n";
    } else if (validate->parsed()) {
      const auto ds = abci::load_dataset(manifest_path, 2);
      std::size_t trials = 0;
      for (const auto& p : ds.participants) trials += p.trials.size();
      std::cout << "ok: " << ds.participants.size() << " participants, " << trials
                << " trials, " << ds.manifest.channel_labels.size() << " channels\n";
    } else if (synth->parsed()) {
      const auto manifest = abci::generate_synthetic_dataset(synth_out, opt);
      std::cout << "wrote " << manifest.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
