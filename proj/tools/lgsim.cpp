#include "lgsim/cli/commands.hpp"
#include "lgsim/cli/config.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  using namespace lgsim::cli;
  const std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("LGSIM_SEED")) env_seed = s;

  RunConfig cfg;
  try {
    cfg = parse_config(args, env_seed);
  } catch (const HelpRequested& help) {
    std::cout << help.what();
    return kOk;
  } catch (const UsageError& e) {
    std::cerr << "lgsim: " << e.what() << "\nRun with --help for usage.\n";
    return kUsageError;
  }
  return run_command(cfg, std::cout, std::cerr);
}
