#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "snlw/config.hpp"
#include "snlw/wave_state.hpp"

namespace snlw {

enum ExitCode : int {
  kExitPass = 0,
  kExitTestFailure = 1,
  kExitConfigError = 2,
  kExitRuntimeError = 3,
};

const std::vector<std::string>& subcommand_names();

struct CliOptions {
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out;
  std::optional<int> jobs;
};

/// u0 = amplitude exp(-|x|^2 / width^2), u1 = 0 on the configured grid.
WaveState initial_state(const ExperimentConfig& cfg);

/// Runs one subcommand and writes its artifacts under the output directory.
/// Returns an ExitCode; module errors are reported on `err`.
int run_subcommand(const std::string& name, ExperimentConfig cfg, const CliOptions& options, std::ostream& out,
                   std::ostream& err);

/// Full command line: `snlw <subcommand> [--config PATH] [--seed-override INT] [--out DIR] [--jobs INT]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace snlw
