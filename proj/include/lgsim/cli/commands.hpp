#pragma once

#include "lgsim/cli/config.hpp"
#include "lgsim/cli/report.hpp"

#include <iosfwd>

namespace lgsim::cli {

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kUsageError = 2, kIoError = 3 };

/// Angular frequency used by every command. Curves depend on theta only.
inline constexpr double kOmega = 1.0;

/// Serialized result of one command plus whether its internal checks held.
struct CommandOutput {
  std::string text;
  bool invariants_ok = true;
  std::string failure;  // set when !invariants_ok
};

/// Runs the configured experiment and serializes it in the configured format.
CommandOutput render(const RunConfig& cfg);

/// render() then writes to cfg.output_path, or `out` when no path is set.
/// Diagnostics go to `err`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace lgsim::cli
