#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "psmt/config.hpp"

namespace psmt {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitNashFlag = 2, kExitConfig = 3, kExitVerify = 4 };

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> dump_transcript;
  bool allow_underspec = false;
  // Transcript dump cap (first trial of each cell plus failing trials).
  std::size_t dump_limit = 200;
};

// Each command writes its report to `out` and diagnostics to `log`, and
// returns an ExitCode. ConfigError is caught and mapped to kExitConfig.
int cmd_bounds(const ExperimentConfig& c, const CommandOptions& o, std::ostream& out, std::ostream& log);
int cmd_simulate(const ExperimentConfig& c, const CommandOptions& o, std::ostream& out, std::ostream& log);
int cmd_verify(const ExperimentConfig& c, const CommandOptions& o, std::ostream& out, std::ostream& log);
int cmd_sweep(const ExperimentConfig& c, const CommandOptions& o, std::ostream& out, std::ostream& log);

}  // namespace psmt
