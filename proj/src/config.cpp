#include "lgsim/cli/config.hpp"

#include "lgsim/states.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

namespace lgsim::cli {

namespace {

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"sweep", Command::sweep},
      {"correlations", Command::correlations},
      {"noninvasive-check", Command::noninvasive_check},
      {"tomography", Command::tomography},
      {"noise-check", Command::noise_check},
  };
  return names;
}

const std::map<std::string, Format>& format_names() {
  static const std::map<std::string, Format> names{
      {"csv", Format::csv}, {"json", Format::json}, {"svg", Format::svg}};
  return names;
}

std::uint64_t parse_seed(const std::string& text, const std::string& source) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text.front() == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &pos, 10);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) {
    throw UsageError(source + ": expected a non-negative integer seed, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

template <typename T>
T json_as(const nlohmann::json& v, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw std::invalid_argument("not a boolean");
    } else if constexpr (std::is_arithmetic_v<T>) {
      if (!v.is_number()) throw std::invalid_argument("not a number");
      if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw std::invalid_argument("not an integer");
      }
    } else {
      if (!v.is_string()) throw std::invalid_argument("not a string");
    }
    return v.get<T>();
  } catch (const std::exception& e) {
    throw UsageError("config key '" + key + "': " + e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& [name, value] : command_names()) {
    if (value == c) return name.c_str();
  }
  return "?";
}

const char* to_string(Format f) {
  for (const auto& [name, value] : format_names()) {
    if (value == f) return name.c_str();
  }
  return "?";
}

RunConfig parse_config(const std::vector<std::string>& args, std::optional<std::string> env_seed) {
  RunConfig cfg;
  std::string command;
  std::string format = "csv";
  std::string seed_text;
  std::string config_path;
  bool degrees = false;
  bool p0_from_file = false;
  bool p1_from_file = false;

  CLI::App app{"Leggett-Garg scattering-circuit simulator", "lgsim"};
  app.add_option("command", command, "sweep | correlations | noninvasive-check | tomography | noise-check")
      ->required()
      ->check(CLI::IsMember({"sweep", "correlations", "noninvasive-check", "tomography", "noise-check"}));
  app.add_option("--theta-min", cfg.theta_min, "Sweep start (radians)");
  app.add_option("--theta-max", cfg.theta_max, "Sweep end (radians)");
  app.add_option("--steps", cfg.steps, "Number of sweep points, endpoints included");
  app.add_option("--epsilon", cfg.epsilon, "Probe polarization of the pseudo-pure state, (0, 1]");
  app.add_option("--p0", cfg.p0, "System population of |0>");
  app.add_option("--p1", cfg.p1, "System population of |1>");
  app.add_option("--t2-probe", cfg.t2_probe, "Probe T2 (s)");
  app.add_option("--t2-system", cfg.t2_system, "System T2 (s)");
  app.add_option("--duration", cfg.duration, "Protocol duration (s)");
  app.add_option("--noise-sigma", cfg.noise_sigma, "Tomography readout noise std-dev");
  app.add_option("--seed", seed_text, "Noise seed (falls back to LGSIM_SEED)");
  app.add_option("-o,--output", cfg.output_path, "Output file (stdout when omitted)");
  app.add_option("--format", format, "csv | json | svg");
  app.add_option("--config", config_path, "Flat JSON object keyed by flag name");
  app.add_flag("--degrees", degrees, "Read --theta-min/--theta-max in degrees");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto given = [&](const std::string& flag) { return app.get_option(flag)->count() > 0; };

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    require(static_cast<bool>(in), "--config: cannot read '" + config_path + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("--config: invalid JSON: " + std::string(e.what()));
    }
    require(doc.is_object(), "--config: top level must be a JSON object");

    const auto num = [&](const char* key, double& dst) {
      return [&dst, key](const nlohmann::json& v) { dst = json_as<double>(v, key); };
    };
    std::map<std::string, std::function<void(const nlohmann::json&)>> setters{
        {"theta-min", num("theta-min", cfg.theta_min)},
        {"theta-max", num("theta-max", cfg.theta_max)},
        {"steps", [&](const nlohmann::json& v) { cfg.steps = json_as<int>(v, "steps"); }},
        {"epsilon", num("epsilon", cfg.epsilon)},
        {"p0",
         [&](const nlohmann::json& v) {
           cfg.p0 = json_as<double>(v, "p0");
           p0_from_file = true;
         }},
        {"p1",
         [&](const nlohmann::json& v) {
           cfg.p1 = json_as<double>(v, "p1");
           p1_from_file = true;
         }},
        {"t2-probe", num("t2-probe", cfg.t2_probe)},
        {"t2-system", num("t2-system", cfg.t2_system)},
        {"duration", num("duration", cfg.duration)},
        {"noise-sigma", num("noise-sigma", cfg.noise_sigma)},
        {"seed",
         [&](const nlohmann::json& v) {
           require(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0),
                   "config key 'seed': expected a non-negative integer");
           seed_text = std::to_string(v.get<std::uint64_t>());
         }},
        {"output", [&](const nlohmann::json& v) { cfg.output_path = json_as<std::string>(v, "output"); }},
        {"format", [&](const nlohmann::json& v) { format = json_as<std::string>(v, "format"); }},
        {"degrees", [&](const nlohmann::json& v) { degrees = json_as<bool>(v, "degrees"); }},
    };
    for (const auto& [key, value] : doc.items()) {
      const auto it = setters.find(key);
      require(it != setters.end(), "--config: unknown key '" + key + "'");
      if (given("--" + key)) continue;
      it->second(value);
    }
  }

  cfg.command = command_names().at(command);
  const auto fmt = format_names().find(format);
  require(fmt != format_names().end(), "--format: expected csv, json or svg, got '" + format + "'");
  cfg.format = fmt->second;

  if (!seed_text.empty()) {
    cfg.seed = parse_seed(seed_text, "--seed");
  } else if (env_seed && !env_seed->empty()) {
    cfg.seed = parse_seed(*env_seed, "LGSIM_SEED");
  }

  // One population may be given alone; the other is its complement.
  const bool has_p0 = given("--p0") || p0_from_file;
  const bool has_p1 = given("--p1") || p1_from_file;
  if (has_p0 && !has_p1) cfg.p1 = 1.0 - cfg.p0;
  if (has_p1 && !has_p0) cfg.p0 = 1.0 - cfg.p1;

  if (degrees) {
    cfg.theta_min *= std::numbers::pi / 180.0;
    cfg.theta_max *= std::numbers::pi / 180.0;
  }

  require(std::isfinite(cfg.theta_min) && cfg.theta_min >= 0.0, "--theta-min: must be finite and >= 0");
  require(std::isfinite(cfg.theta_max) && cfg.theta_max > cfg.theta_min,
          "--theta-max: must be finite and greater than --theta-min");
  require(cfg.steps >= 2, "--steps: must be >= 2");
  require(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0, "--epsilon: must lie in (0, 1]");
  try {
    MixturePopulations<double>(cfg.p0, cfg.p1);
  } catch (const std::invalid_argument&) {
    throw UsageError("--p0/--p1: populations must be >= 0 and sum to 1");
  }
  require(cfg.t2_probe > 0.0, "--t2-probe: must be > 0");
  require(cfg.t2_system > 0.0, "--t2-system: must be > 0");
  require(std::isfinite(cfg.duration) && cfg.duration >= 0.0, "--duration: must be finite and >= 0");
  require(std::isfinite(cfg.noise_sigma) && cfg.noise_sigma >= 0.0, "--noise-sigma: must be finite and >= 0");
  if (cfg.format == Format::svg) {
    require(!cfg.output_path.empty(), "--output: required when --format svg");
    require(cfg.command == Command::sweep || cfg.command == Command::correlations,
            "--format svg: only available for sweep and correlations");
  }
  return cfg;
}

}  // namespace lgsim::cli
