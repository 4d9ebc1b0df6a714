// Two-time correlators, the Leggett-Garg quantity K = C12 + C23 - C13 and
// violation-region search over a theta sweep.
//
// Units: hbar = 1 and the Hamiltonian is omega * sigma_x, so the energy gap is
// 2 * omega and every reported curve depends only on theta = 2 * omega * dt.
#pragma once

#include "lgsim/circuit.hpp"
#include "lgsim/states.hpp"

#include <functional>
#include <optional>

namespace lgsim {

/// Fixed evolution model H = omega * sigma_x.
template <typename Scalar = double>
class EvolutionSpec {
 public:
  explicit EvolutionSpec(Scalar omega) : omega_(omega) {
    if (!(omega >= Scalar(0)) || !std::isfinite(omega)) {
      throw std::invalid_argument("EvolutionSpec: omega must be finite and >= 0");
    }
  }
  Scalar omega() const { return omega_; }
  Matrix<Scalar> hamiltonian() const { return omega_ * pauli_x<Scalar>(); }
  Scalar energy_gap() const { return Scalar(2) * omega_; }

 private:
  Scalar omega_;
};

/// Equally spaced measurement times t1 <= t2 <= t3 with t1 >= 0.
template <typename Scalar = double>
class LGSchedule {
 public:
  LGSchedule(Scalar t1, Scalar t2, Scalar t3) : t1_(t1), t2_(t2), t3_(t3) {
    if (!(t1 >= Scalar(0) && t1 <= t2 && t2 <= t3)) {
      throw std::invalid_argument("LGSchedule: need 0 <= t1 <= t2 <= t3");
    }
    if (std::abs((t2 - t1) - (t3 - t2)) > tol<Scalar>(1e-12)) {
      throw std::invalid_argument("LGSchedule: times must be equally spaced");
    }
  }
  static LGSchedule uniform(Scalar dt) { return LGSchedule(0, dt, dt + dt); }

  Scalar t1() const { return t1_; }
  Scalar t2() const { return t2_; }
  Scalar t3() const { return t3_; }
  Scalar dt() const { return t2_ - t1_; }

 private:
  Scalar t1_, t2_, t3_;
};

template <typename Scalar = double>
struct LGResult {
  Scalar theta;    // energy gap * dt
  Scalar delta_t;
  Scalar c12, c23, c13;
  Scalar k;
};

template <typename Scalar = double>
struct CorrelatorReading {
  Scalar raw;
  Scalar normalized;
};

template <typename Scalar = double>
struct ViolationInterval {
  Scalar lo;
  Scalar hi;
};

/// State map applied to the register just before the final probe Hadamard.
template <typename Scalar>
using PreReadoutChannel = std::function<DensityMatrix<Scalar>(const DensityMatrix<Scalar>&)>;

using EvolutionSpecd = EvolutionSpec<double>;
using LGScheduled = LGSchedule<double>;
using LGResultd = LGResult<double>;

/// O = 2|psi0><psi0| - I
template <typename Scalar>
Observable<Scalar> observable_from_state(const PureState<Scalar>& psi0) {
  return Observable<Scalar>(Scalar(2) * pure_density(psi0).matrix() - identity<Scalar>(2));
}

/// O(t) = e^{iHt} O e^{-iHt}. For O = sigma_z this is
/// cos(2 omega t) sigma_z + sin(2 omega t) sigma_y.
template <typename Scalar>
Observable<Scalar> heisenberg_observable(const Observable<Scalar>& obs, const EvolutionSpec<Scalar>& evo,
                                         Scalar t) {
  const Matrix<Scalar> u = expm_hermitian<Scalar>(evo.hamiltonian(), t).matrix();
  return Observable<Scalar>(Matrix<Scalar>(u.adjoint() * obs.matrix() * u));
}

/// Re Tr[rho_sys O(t_m) O(t_k)], computed directly in the Heisenberg picture.
template <typename Scalar>
Scalar correlation_oracle(const DensityMatrix<Scalar>& rho_sys, const Observable<Scalar>& obs,
                          const EvolutionSpec<Scalar>& evo, Scalar t_k, Scalar t_m) {
  if (rho_sys.dim() != 2) throw std::invalid_argument("correlation_oracle: system state must be 2x2");
  const auto om = heisenberg_observable(obs, evo, t_m);
  const auto ok = heisenberg_observable(obs, evo, t_k);
  return (rho_sys.matrix() * om.matrix() * ok.matrix()).trace().real();
}

namespace detail {

template <typename Scalar>
Scalar probe_signal(const DensityMatrix<Scalar>& rho_sys, const Observable<Scalar>& obs,
                    const EvolutionSpec<Scalar>& evo, Scalar t_k, Scalar t_m, Scalar probe_eps,
                    const PreReadoutChannel<Scalar>& channel) {
  const auto circuit = build_scattering_circuit(evo.hamiltonian(), obs, t_k, t_m);
  const auto probe = pseudo_pure(PseudoPureConfig<Scalar>(probe_eps), PureState<Scalar>::zero());
  const auto rho_in = product_state(probe, rho_sys);
  if (!channel) return expect_probe_z(run(circuit, rho_in));
  const std::size_t readout = circuit.size() - 1;
  const auto before = channel(run(circuit, rho_in, 0, readout));
  return expect_probe_z(run(circuit, before, readout));
}

}  // namespace detail

/// Runs the scattering circuit on pseudo_pure(eps, |0>) (x) rho_sys and reads
/// the probe. `normalized` divides by the reference signal of the zero-delay
/// circuit, which removes the polarization factor eps.
///
/// An optional channel is inserted before the final Hadamard of the measured
/// circuit. The reference is always taken from the ideal circuit.
template <typename Scalar>
CorrelatorReading<Scalar> correlation_circuit(const DensityMatrix<Scalar>& rho_sys,
                                              const Observable<Scalar>& obs,
                                              const EvolutionSpec<Scalar>& evo, Scalar t_k, Scalar t_m,
                                              Scalar probe_eps,
                                              const PreReadoutChannel<Scalar>& channel = {}) {
  if (!(t_m >= t_k)) throw std::invalid_argument("correlation_circuit: need t_m >= t_k");
  const Scalar reference = detail::probe_signal(rho_sys, obs, evo, Scalar(0), Scalar(0), probe_eps,
                                                PreReadoutChannel<Scalar>{});
  if (std::abs(reference) < Scalar(1e-15)) {
    throw std::runtime_error("correlation_circuit: reference signal too small to normalize");
  }
  const Scalar raw = detail::probe_signal(rho_sys, obs, evo, t_k, t_m, probe_eps, channel);
  return {raw, raw / reference};
}

/// K = C12 + C23 - C13 from three normalized circuit correlators.
template <typename Scalar>
LGResult<Scalar> k_value(const DensityMatrix<Scalar>& rho_sys, const Observable<Scalar>& obs,
                         const EvolutionSpec<Scalar>& evo, const LGSchedule<Scalar>& schedule,
                         Scalar probe_eps, const PreReadoutChannel<Scalar>& channel = {}) {
  const auto c = [&](Scalar tk, Scalar tm) {
    return correlation_circuit(rho_sys, obs, evo, tk, tm, probe_eps, channel).normalized;
  };
  LGResult<Scalar> r{};
  r.delta_t = schedule.dt();
  r.theta = evo.energy_gap() * schedule.dt();
  r.c12 = c(schedule.t1(), schedule.t2());
  r.c23 = c(schedule.t2(), schedule.t3());
  r.c13 = c(schedule.t1(), schedule.t3());
  r.k = r.c12 + r.c23 - r.c13;
  return r;
}

/// Trace distance between the system's reduced state after the scattering
/// circuit and its input state. Zero means the probe left the system intact.
template <typename Scalar>
Scalar invasiveness(const DensityMatrix<Scalar>& rho_sys, const Observable<Scalar>& obs,
                    const EvolutionSpec<Scalar>& evo, Scalar t_k, Scalar t_m, Scalar probe_eps = Scalar(1)) {
  const auto circuit = build_scattering_circuit(evo.hamiltonian(), obs, t_k, t_m);
  const auto probe = pseudo_pure(PseudoPureConfig<Scalar>(probe_eps), PureState<Scalar>::zero());
  const auto out = run(circuit, product_state(probe, rho_sys));
  return trace_distance(partial_trace(out, Wire::system), rho_sys);
}

/// 2 cos(theta) - cos(2 theta)
template <typename Scalar>
Scalar analytic_k(Scalar theta) {
  return Scalar(2) * std::cos(theta) - std::cos(Scalar(2) * theta);
}

/// K at theta for schedule (0, dt, 2 dt) with dt = theta / energy gap.
template <typename Scalar>
LGResult<Scalar> k_at_theta(const EvolutionSpec<Scalar>& evo, const DensityMatrix<Scalar>& rho_sys,
                            Scalar probe_eps, Scalar theta, const Observable<Scalar>& obs,
                            const PreReadoutChannel<Scalar>& channel = {}) {
  if (!(evo.energy_gap() > Scalar(0))) throw std::invalid_argument("k_at_theta: omega must be > 0");
  if (!(theta >= Scalar(0))) throw std::invalid_argument("k_at_theta: theta must be >= 0");
  auto r = k_value(rho_sys, obs, evo, LGSchedule<Scalar>::uniform(theta / evo.energy_gap()), probe_eps,
                   channel);
  r.theta = theta;
  return r;
}

/// `steps` points uniformly covering [theta_min, theta_max], both ends included.
template <typename Scalar>
std::vector<Scalar> theta_grid(Scalar theta_min, Scalar theta_max, int steps) {
  if (steps < 2) throw std::invalid_argument("theta grid: steps must be >= 2");
  if (!(theta_min < theta_max)) throw std::invalid_argument("theta grid: need theta_min < theta_max");
  std::vector<Scalar> grid(static_cast<std::size_t>(steps));
  const Scalar span = theta_max - theta_min;
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] = theta_min + span * Scalar(i) / Scalar(steps - 1);
  }
  grid.back() = theta_max;
  return grid;
}

template <typename Scalar>
std::vector<LGResult<Scalar>> sweep(const EvolutionSpec<Scalar>& evo, const DensityMatrix<Scalar>& rho_sys,
                                    Scalar probe_eps, Scalar theta_min, Scalar theta_max, int steps,
                                    const Observable<Scalar>& obs = Observable<Scalar>(pauli_z<Scalar>())) {
  if (!(theta_min >= Scalar(0))) throw std::invalid_argument("sweep: theta_min must be >= 0");
  std::vector<LGResult<Scalar>> out;
  for (Scalar theta : theta_grid(theta_min, theta_max, steps)) {
    out.push_back(k_at_theta(evo, rho_sys, probe_eps, theta, obs));
  }
  return out;
}

/// Maximal runs of grid points with K > threshold + 1e-12. Each run endpoint
/// that has a non-violating neighbour is refined by bisection (to 1e-9) on the
/// sign of K(theta) - threshold. `k_of_theta` re-evaluates K off the grid;
/// without it, K is linearly interpolated between the bracketing grid points.
template <typename Scalar>
std::vector<ViolationInterval<Scalar>> find_violations(
    const std::vector<LGResult<Scalar>>& results, Scalar threshold = Scalar(1),
    const std::function<Scalar(Scalar)>& k_of_theta = {}) {
  if (results.empty()) throw std::invalid_argument("find_violations: no results");
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (!(results[i - 1].theta < results[i].theta)) {
      throw std::invalid_argument("find_violations: results must be sorted by theta");
    }
  }
  const Scalar guard = Scalar(1e-12);
  const auto violates = [&](const LGResult<Scalar>& r) { return r.k > threshold + guard; };

  // Returns the crossing between a (outside) and b (inside).
  const auto refine = [&](const LGResult<Scalar>& outside, const LGResult<Scalar>& inside) {
    const auto k = [&](Scalar theta) {
      if (k_of_theta) return k_of_theta(theta);
      const Scalar w = (theta - outside.theta) / (inside.theta - outside.theta);
      return outside.k + w * (inside.k - outside.k);
    };
    Scalar out = outside.theta;
    Scalar in = inside.theta;
    while (std::abs(in - out) > Scalar(1e-9)) {
      const Scalar mid = out + (in - out) / Scalar(2);
      if (mid == out || mid == in) break;
      (k(mid) > threshold ? in : out) = mid;
    }
    return out + (in - out) / Scalar(2);
  };

  std::vector<ViolationInterval<Scalar>> intervals;
  std::size_t i = 0;
  while (i < results.size()) {
    if (!violates(results[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < results.size() && violates(results[j + 1])) ++j;
    ViolationInterval<Scalar> iv{results[i].theta, results[j].theta};
    if (i > 0) iv.lo = refine(results[i - 1], results[i]);
    if (j + 1 < results.size()) iv.hi = refine(results[j + 1], results[j]);
    intervals.push_back(iv);
    i = j + 1;
  }
  return intervals;
}

}  // namespace lgsim
