#include <cstdint>
#include <utility>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcqp/config.hpp"
#include "qcqp/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"QCQP relaxation comparison pipeline"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_dir = "out";
  std::string experiment_id;
  std::uint64_t seed = 0;
  int workers = 0;
  bool print_default_config = false;

  app.add_option("--config", config_path, "Configuration file (TOML subset)");
  app.add_option("--out", out_dir, "Output directory")
      ->capture_default_str();
  app.add_option("--experiment", experiment_id,
                 "Override the experiment id from the config");
  app.add_option("--seed", seed, "Override the master seed from the config");
  app.add_option("--workers", workers,
                 "Override the worker count from the config");
  app.add_flag("--print-default-config", print_default_config,
               "Print a config template with every default and exit");

  const std::pair<const char*, const char*> stages[] = {
      {"generate", "Generate instance datasets"},
      {"solve", "Solve both relaxations and label instances"},
      {"featurize", "Extract feature vectors for each requested schema"},
      {"train", "Fit the requested models on the training datasets"},
      {"evaluate", "Score models on the test datasets and write results JSON"}};
  for (const auto& [name, help] : stages)
    app.add_subcommand(name, help)->fallthrough();
  app.add_subcommand("experiment",
                     "Run every stage, then render the report files")
      ->fallthrough();
  app.add_subcommand("report",
                     "Render report files from existing results JSON")
      ->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (print_default_config) {
    std::cout << qcqp::config::default_config_text();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return 0;
  }

  try {
    qcqp::config::Config cfg =
        config_path.empty() ? qcqp::config::config_from_table({})
                            : qcqp::config::load_config(config_path);
    if (app.count("--seed") > 0) cfg.seed = seed;
    if (app.count("--workers") > 0) cfg.workers = workers;
    if (app.count("--experiment") > 0) cfg.experiment_id = experiment_id;
    if (cfg.workers < 1) cfg.workers = 1;

    const std::string name = app.get_subcommands()[0]->get_name();
    if (name == "report") {
      std::cout << qcqp::pipeline::report(out_dir).text;
      return 0;
    }
    if (name == "experiment") {
      const std::string path = qcqp::pipeline::run(
          cfg, out_dir, qcqp::pipeline::Stage::Evaluate);
      std::cout << "results: " << path << "\n";
      const auto rep = qcqp::pipeline::report(out_dir);
      std::cout << rep.text;
      return 0;
    }
    const auto stage = qcqp::pipeline::stage_from_name(name);
    const std::string path = qcqp::pipeline::run(cfg, out_dir, stage);
    if (!path.empty())
      std::cout << "results: " << path << "\n";
    else
      std::cout << "stage " << name << " complete\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
