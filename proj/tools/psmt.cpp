// Command-line front end: psmt {bounds|simulate|verify|sweep} --config PATH [options]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "psmt/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rational secure message transmission simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string out_path;
  std::string dump_path;
  bool allow_underspec = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--seed", seed, "master seed override");
    sub->add_option("--trials", trials, "trials per cell override");
    sub->add_option("--out", out_path, "report path (default stdout)");
    sub->add_option("--dump-transcript", dump_path, "write sample and failing transcripts as JSON");
    sub->add_flag("--allow-underspec", allow_underspec, "run even when ell is below the required bound");
  };
  CLI::App* bounds = app.add_subcommand("bounds", "required ell / delta for the configured utility table");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo utility estimates over the attack catalog");
  CLI::App* verify = app.add_subcommand("verify", "exhaustive small-parameter checks");
  CLI::App* sweep = app.add_subcommand("sweep", "metric as one parameter varies");
  for (auto* s : {bounds, simulate, verify, sweep}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : psmt::kExitConfig;
  }

  psmt::ExperimentConfig config;
  try {
    config = psmt::load_config_file(config_path);
  } catch (const psmt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return psmt::kExitConfig;
  }

  psmt::CommandOptions opts;
  opts.seed = seed;
  opts.trials = trials;
  opts.allow_underspec = allow_underspec;
  if (!dump_path.empty()) opts.dump_transcript = dump_path;

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return psmt::kExitError;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  if (bounds->parsed()) return psmt::cmd_bounds(config, opts, out, std::cerr);
  if (simulate->parsed()) return psmt::cmd_simulate(config, opts, out, std::cerr);
  if (verify->parsed()) return psmt::cmd_verify(config, opts, out, std::cerr);
  return psmt::cmd_sweep(config, opts, out, std::cerr);
}
