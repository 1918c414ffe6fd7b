#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "conquard/processors.hpp"
#include "conquard/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"conquard - continuous code quality dashboards"};
  app.require_subcommand(1);

  conquard::RunOptions options;
  std::string config, project = ".", out = "conquard-report", history, run_id, timestamp;
  bool dry_run = false;
  int verbosity = 0;

  auto* run = app.add_subcommand("run", "execute a pipeline and render the dashboard");
  run->add_option("--config", config, "pipeline configuration file")->required();
  run->add_option("--project", project, "project root to analyze (default: .)");
  run->add_option("--out", out, "report output directory (default: conquard-report)");
  run->add_option("--history-file", history, "snapshot store for trend analysis");
  run->add_option("--run-id", run_id, "identifier of this run (default: timestamp)");
  run->add_option("--timestamp", timestamp,
                  "pin the report timestamp (ISO-8601; default: now)");
  run->add_flag("--dry-run", dry_run, "validate only, do not execute");
  run->add_flag("-v,--verbose", verbosity, "more progress output on stderr");

  auto* validate = app.add_subcommand("validate", "statically check a configuration");
  validate->add_option("--config", config, "pipeline configuration file")->required();

  auto* list = app.add_subcommand("list-processors", "print the processor catalog");

  CLI11_PARSE(app, argc, argv);

  conquard::Registry registry = conquard::default_registry();

  if (list->parsed()) {
    std::cout << conquard::list_processors_text(registry);
    return conquard::kExitOk;
  }

  options.config = config;
  options.project = project;
  options.out = out;
  if (!history.empty()) options.history_file = history;
  options.run_id = run_id;
  options.timestamp = timestamp;
  options.dry_run = dry_run;
  options.verbosity = verbosity;

  if (validate->parsed())
    return conquard::cmd_validate(options, registry, std::cout, std::cerr);
  return conquard::cmd_run(options, registry, std::cerr);
}
