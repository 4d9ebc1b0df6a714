#include "lgsim/cli/commands.hpp"

#include "lgsim/lgsim.hpp"

#include <fstream>
#include <ostream>

namespace lgsim::cli {

namespace {

constexpr double kAbsErrorLimit = 1e-9;
constexpr double kNoninvasiveLimit = 1e-12;

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = to_string(cfg.command);
  j["theta-min"] = cfg.theta_min;
  j["theta-max"] = cfg.theta_max;
  j["steps"] = cfg.steps;
  j["epsilon"] = cfg.epsilon;
  j["p0"] = cfg.p0;
  j["p1"] = cfg.p1;
  j["t2-probe"] = cfg.t2_probe;
  j["t2-system"] = cfg.t2_system;
  j["duration"] = cfg.duration;
  j["noise-sigma"] = cfg.noise_sigma;
  j["seed"] = cfg.seed;
  j["omega"] = kOmega;
  return j;
}

DensityMatrixd system_state(const RunConfig& cfg) {
  return classical_mixture(MixturePopulations<double>(cfg.p0, cfg.p1));
}

std::vector<LGResultd> run_sweep(const RunConfig& cfg) {
  return sweep(EvolutionSpecd(kOmega), system_state(cfg), cfg.epsilon, cfg.theta_min, cfg.theta_max,
               cfg.steps);
}

std::vector<double> column(const std::vector<LGResultd>& rs, double LGResultd::*field) {
  std::vector<double> out;
  out.reserve(rs.size());
  for (const auto& r : rs) out.push_back(r.*field);
  return out;
}

CommandOutput finish(const RunConfig& cfg, const Table& table, CommandOutput result) {
  switch (cfg.format) {
    case Format::csv: result.text = emit_csv(table); break;
    case Format::json: result.text = emit_json(config_json(cfg), table); break;
    case Format::svg: break;  // filled by the caller
  }
  return result;
}

CommandOutput sweep_command(const RunConfig& cfg) {
  const auto results = run_sweep(cfg);
  Table table{{"theta", "c12", "c23", "c13", "k", "k_analytic", "abs_error"}, {}};
  CommandOutput out;
  double worst = 0;
  for (const auto& r : results) {
    const double expected = analytic_k(r.theta);
    const double err = std::abs(r.k - expected);
    worst = std::max(worst, err);
    table.rows.push_back({r.theta, r.c12, r.c23, r.c13, r.k, expected, err});
  }
  if (worst > kAbsErrorLimit) {
    out.invariants_ok = false;
    out.failure = "circuit K deviates from 2cos(theta) - cos(2 theta) by " + format_real(worst);
  }
  if (cfg.format != Format::svg) return finish(cfg, table, out);

  const EvolutionSpecd evo(kOmega);
  const auto rho_sys = system_state(cfg);
  const Observabled obs(pauli_z());
  const auto k_of_theta = [&](double theta) { return k_at_theta(evo, rho_sys, cfg.epsilon, theta, obs).k; };
  Plot plot;
  plot.title = "Leggett-Garg K(theta)";
  plot.x_label = "theta = dE dt / hbar (rad)";
  plot.y_label = "K";
  plot.x_min = cfg.theta_min;
  plot.x_max = cfg.theta_max;
  plot.y_min = -3.25;
  plot.y_max = 1.75;
  plot.bound = 1.0;
  plot.series.push_back({"K circuit", "#1f4e9c", column(results, &LGResultd::theta), column(results, &LGResultd::k)});
  for (const auto& iv : find_violations<double>(results, 1.0, k_of_theta)) plot.shaded.emplace_back(iv.lo, iv.hi);
  out.text = emit_svg(plot);
  return out;
}

CommandOutput correlations_command(const RunConfig& cfg) {
  const auto results = run_sweep(cfg);
  Table table{{"theta", "c12", "c23", "c13"}, {}};
  for (const auto& r : results) table.rows.push_back({r.theta, r.c12, r.c23, r.c13});
  if (cfg.format != Format::svg) return finish(cfg, table, {});

  Plot plot;
  plot.title = "Two-time correlators";
  plot.x_label = "theta = dE dt / hbar (rad)";
  plot.y_label = "C";
  plot.x_min = cfg.theta_min;
  plot.x_max = cfg.theta_max;
  plot.y_min = -1.1;
  plot.y_max = 1.1;
  const auto theta = column(results, &LGResultd::theta);
  plot.series.push_back({"C12", "#1f4e9c", theta, column(results, &LGResultd::c12)});
  plot.series.push_back({"C23", "#2e8b57", theta, column(results, &LGResultd::c23)});
  plot.series.push_back({"C13", "#c0392b", theta, column(results, &LGResultd::c13)});
  CommandOutput out;
  out.text = emit_svg(plot);
  return out;
}

// Largest invasiveness over every correlator circuit of every grid point.
double max_invasiveness(const RunConfig& cfg, const DensityMatrixd& rho_sys) {
  const EvolutionSpecd evo(kOmega);
  const Observabled obs(pauli_z());
  double worst = 0;
  for (double theta : theta_grid(cfg.theta_min, cfg.theta_max, cfg.steps)) {
    const auto s = LGScheduled::uniform(theta / evo.energy_gap());
    for (const auto& [tk, tm] : {std::pair{s.t1(), s.t2()}, std::pair{s.t2(), s.t3()}, std::pair{s.t1(), s.t3()}}) {
      worst = std::max(worst, invasiveness(rho_sys, obs, evo, tk, tm, cfg.epsilon));
    }
  }
  return worst;
}

CommandOutput noninvasive_command(const RunConfig& cfg) {
  const double mixed = max_invasiveness(cfg, maximally_mixed());
  const double ground = max_invasiveness(cfg, pure_density(PureState<double>::zero()));
  Table table{{"system_state", "max_trace_distance"}, {}};
  table.rows.push_back({std::string("maximally_mixed"), mixed});
  table.rows.push_back({std::string("ground"), ground});
  CommandOutput out;
  if (mixed > kNoninvasiveLimit) {
    out.invariants_ok = false;
    out.failure = "maximally mixed system state disturbed by " + format_real(mixed);
  }
  return finish(cfg, table, out);
}

CommandOutput tomography_command(const RunConfig& cfg) {
  const auto record = tomograph(fig2_input_state(cfg.epsilon), ReadoutNoise<double>(cfg.noise_sigma, cfg.seed));
  const Matrixd dev = reconstruct(record) - identity(4) / 4.0;
  const double fidelity = overlap_fidelity<double>(dev, fig2_theory_deviation());
  Table table{{"observable", "value"}, {}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) table.rows.push_back({pauli_label(i, j), record(i, j)});
  }
  table.rows.push_back({std::string("fidelity"), fidelity});
  CommandOutput out;
  if (cfg.noise_sigma == 0.0 && std::abs(fidelity - 1.0) > 1e-12) {
    out.invariants_ok = false;
    out.failure = "noise-free tomography fidelity is " + format_real(fidelity);
  }
  return finish(cfg, table, out);
}

CommandOutput noise_command(const RunConfig& cfg) {
  const double theta = std::numbers::pi / 3.0;
  const auto check = k_attenuation_check(T2Config<double>(cfg.t2_probe, cfg.t2_system, cfg.duration), theta,
                                         cfg.epsilon, kOmega);
  Table table{{"theta", "k_ideal", "k_noisy", "ratio"}, {}};
  table.rows.push_back({theta, check.k_ideal, check.k_noisy, check.k_noisy / check.k_ideal});
  return finish(cfg, table, {});
}

}  // namespace

CommandOutput render(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::sweep: return sweep_command(cfg);
    case Command::correlations: return correlations_command(cfg);
    case Command::noninvasive_check: return noninvasive_command(cfg);
    case Command::tomography: return tomography_command(cfg);
    case Command::noise_check: return noise_command(cfg);
  }
  throw std::invalid_argument("unknown command");
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CommandOutput result;
  try {
    result = render(cfg);
  } catch (const std::exception& e) {
    err << "lgsim: " << e.what() << '\n';
    return kInvariantFailure;
  }

  if (cfg.output_path.empty()) {
    out << result.text;
    out.flush();
    if (!out) {
      err << "lgsim: failed writing to stdout\n";
      return kIoError;
    }
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "lgsim: cannot open '" << cfg.output_path << "' for writing\n";
      return kIoError;
    }
    file << result.text;
    file.close();
    if (!file) {
      err << "lgsim: failed writing '" << cfg.output_path << "'\n";
      return kIoError;
    }
  }

  if (!result.invariants_ok) {
    err << "lgsim: invariant check failed: " << result.failure << '\n';
    return kInvariantFailure;
  }
  return kOk;
}

}  // namespace lgsim::cli
