#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "littledarwin/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"LittleDarwin: a mutation testing framework for Java"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value project configuration file");
  app.allow_config_extras(true);

  littledarwin::ProjectConfig cfg;
  littledarwin::SubsumeOptions subsume_opts;
  std::vector<std::string> env_pairs;
  std::string manual_dir;

  // Options live on the top-level app so a flat config file covers them all;
  // subcommands fall through unmatched flags to here.
  app.add_option("--source-root", cfg.source_root,
                 "Root directory of the Java sources");
  app.add_option("--output", cfg.output_dir,
                 "Output directory for mutants, results and reports");
  app.add_option("--operators", cfg.operators,
                 "Mutation operators to enable (default: all)")
      ->delimiter(',');
  app.add_option("--include", cfg.include,
                 "Only mutate files matching these globs")
      ->delimiter(',');
  app.add_option("--exclude", cfg.exclude, "Skip files matching these globs")
      ->delimiter(',');
  app.add_option("--seed", cfg.seed, "Seed for all randomized decisions");
  app.add_flag("--higher-order", cfg.higher_order,
               "Work with second-order mutants");
  app.add_option("--sample-rate", cfg.sample_rate,
                 "Fraction of mutants to execute, in (0, 1]");
  app.add_option("--sample-strategy", cfg.sample_strategy,
                 "uniform or weighted (by class LOC)");
  app.add_option("--build-command", cfg.build_command,
                 "Build/test command; must exit non-zero on test failure");
  app.add_option("--build-dir", cfg.build_dir,
                 "Directory the build command runs in");
  app.add_option("--timeout", cfg.timeout_s,
                 "Per-build timeout in seconds (default: 10x green run)");
  app.add_option("--jobs", cfg.jobs,
                 "Parallel workspace copies (default 1, in-place)");
  app.add_option("--marker", cfg.markers,
                 "Compile-error marker; a matching build output marks the "
                 "mutant invalid");
  app.add_option("--env", env_pairs, "KEY=VALUE environment override")
      ->delimiter(',');

  CLI::App* mutate =
      app.add_subcommand("mutate", "Generate mutants for every source file");
  CLI::App* run = app.add_subcommand(
      "run", "Execute the build per mutant and classify outcomes");
  CLI::App* report = app.add_subcommand(
      "report", "Regenerate HTML reports from the results database");
  CLI::App* sample = app.add_subcommand(
      "sample", "Select a mutant subset; prints the id list as JSON");
  sample->add_option("--rate", cfg.sample_rate, "Sampling rate in (0, 1]");
  sample->add_option("--strategy", cfg.sample_strategy,
                     "uniform or weighted");

  CLI::App* subsume = app.add_subcommand(
      "subsume", "Dynamic subsumption analysis over retained results");
  subsume->add_option("--results", subsume_opts.results,
                      "Path to results.json");
  subsume->add_option("--patterns", subsume_opts.patterns,
                      "Test-name pattern preset (surefire, gradle, plain) or "
                      "a JSON pattern file");
  subsume->add_option("--dot", subsume_opts.dot_out,
                      "Write the mutant subsumption graph as DOT");
  subsume->add_option("--json", subsume_opts.json_out,
                      "Write the per-mutant subsumption analysis as JSON");

  CLI::App* manual = app.add_subcommand(
      "manual-import", "Register externally written mutants");
  manual->add_option("--dir", manual_dir, "Directory of mutant files")
      ->required();

  for (CLI::App* sub : {mutate, run, report, sample, subsume, manual}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return littledarwin::kExitConfigError;
  }

  for (const std::string& pair : env_pairs) {
    size_t eq = pair.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --env expects KEY=VALUE, got '" << pair << "'\n";
      return littledarwin::kExitConfigError;
    }
    cfg.env_overrides[pair.substr(0, eq)] = pair.substr(eq + 1);
  }
  if (cfg.sample_rate &&
      (!(*cfg.sample_rate > 0.0) || *cfg.sample_rate > 1.0)) {
    std::cerr << "error: sample rate must be in (0, 1]\n";
    return littledarwin::kExitConfigError;
  }

  try {
    if (mutate->parsed()) return littledarwin::cmd_mutate(cfg, std::cerr);
    if (run->parsed()) return littledarwin::cmd_run(cfg, std::cerr);
    if (report->parsed()) return littledarwin::cmd_report(cfg, std::cerr);
    if (sample->parsed()) {
      return littledarwin::cmd_sample(cfg, std::cout, std::cerr);
    }
    if (subsume->parsed()) {
      if (subsume_opts.results.empty()) {
        subsume_opts.results = cfg.output_dir / "results.json";
      }
      return littledarwin::cmd_subsume(subsume_opts, std::cout, std::cerr);
    }
    if (manual->parsed()) {
      return littledarwin::cmd_manual_import(cfg, manual_dir, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return littledarwin::kExitError;
  }
  return littledarwin::kExitConfigError;
}
