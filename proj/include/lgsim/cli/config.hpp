#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgsim::cli {

enum class Command { sweep, correlations, noninvasive_check, tomography, noise_check };
enum class Format { csv, json, svg };

const char* to_string(Command c);
const char* to_string(Format f);

struct RunConfig {
  Command command = Command::sweep;
  double theta_min = 0.0;
  double theta_max = 2.0 * std::numbers::pi;
  int steps = 721;
  double epsilon = 1.0;
  double p0 = 0.5;
  double p1 = 0.5;
  double t2_probe = 3.0;
  double t2_system = 0.8;
  double duration = 0.01;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;
  std::string output_path;  // empty: stdout
  Format format = Format::csv;
};

/// Bad flag, bad config file or failed validation. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was requested; carries the rendered help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `args` (without the program name). Precedence, highest first:
/// command-line flags, --config JSON file, LGSIM_SEED (seed only), defaults.
RunConfig parse_config(const std::vector<std::string>& args,
                       std::optional<std::string> env_seed = std::nullopt);

}  // namespace lgsim::cli
