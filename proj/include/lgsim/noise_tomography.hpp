// T2 phase damping and simulated two-qubit Pauli tomography.
#pragma once

#include "lgsim/leggett_garg.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace lgsim {

/// Transverse relaxation times (s) and total protocol duration (s). T2 may be
/// +infinity.
template <typename Scalar = double>
class T2Config {
 public:
  T2Config(Scalar t2_probe, Scalar t2_system, Scalar duration)
      : t2_probe_(t2_probe), t2_system_(t2_system), duration_(duration) {
    if (!(t2_probe > Scalar(0)) || !(t2_system > Scalar(0))) {
      throw std::invalid_argument("T2Config: T2 times must be > 0");
    }
    if (!(duration >= Scalar(0)) || !std::isfinite(duration)) {
      throw std::invalid_argument("T2Config: duration must be finite and >= 0");
    }
  }
  Scalar t2_probe() const { return t2_probe_; }
  Scalar t2_system() const { return t2_system_; }
  Scalar duration() const { return duration_; }
  Scalar probe_factor() const { return std::exp(-duration_ / t2_probe_); }
  Scalar system_factor() const { return std::exp(-duration_ / t2_system_); }

 private:
  Scalar t2_probe_, t2_system_, duration_;
};

/// Per-qubit phase damping in the computational basis. Coherences that flip the
/// probe bit scale by exp(-d/T2_probe), those that flip the system bit by
/// exp(-d/T2_system); flipping both takes the product.
template <typename Scalar>
DensityMatrix<Scalar> t2_dephase(const DensityMatrix<Scalar>& rho, const T2Config<Scalar>& cfg) {
  if (rho.dim() != 4) throw std::invalid_argument("t2_dephase: register state must be 4x4");
  const Scalar fp = cfg.probe_factor();
  const Scalar fs = cfg.system_factor();
  Matrix<Scalar> m = rho.matrix();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      Scalar f = 1;
      if ((r >> 1) != (c >> 1)) f *= fp;
      if ((r & 1) != (c & 1)) f *= fs;
      m(r, c) *= f;
    }
  }
  return DensityMatrix<Scalar>(std::move(m));
}

template <typename Scalar = double>
struct AttenuationCheck {
  Scalar k_ideal;
  Scalar k_noisy;
};

/// K at theta for rho_sys = I/2, obs = sigma_z, H = omega sigma_x, with and
/// without T2 damping applied before the final probe Hadamard of every
/// correlator circuit.
template <typename Scalar>
AttenuationCheck<Scalar> k_attenuation_check(const T2Config<Scalar>& cfg, Scalar theta,
                                             Scalar probe_eps = Scalar(1), Scalar omega = Scalar(1)) {
  const EvolutionSpec<Scalar> evo(omega);
  const auto rho_sys = maximally_mixed<Scalar>();
  const Observable<Scalar> obs(pauli_z<Scalar>());
  const PreReadoutChannel<Scalar> damp = [&cfg](const DensityMatrix<Scalar>& rho) {
    return t2_dephase(rho, cfg);
  };
  const Scalar ideal = k_at_theta(evo, rho_sys, probe_eps, theta, obs).k;
  const Scalar noisy = k_at_theta(evo, rho_sys, probe_eps, theta, obs, damp).k;
  return {ideal, noisy};
}

/// c[4 i + j] = Tr[rho (P_i (x) P_j)] with P = {I, X, Y, Z}; i is the probe.
template <typename Scalar = double>
struct TomographyRecord {
  std::array<Scalar, 16> coefficients{};

  Scalar& operator()(int i, int j) { return coefficients[static_cast<std::size_t>(4 * i + j)]; }
  Scalar operator()(int i, int j) const { return coefficients[static_cast<std::size_t>(4 * i + j)]; }
};

/// Label of coefficient (i, j), e.g. "ZI".
inline std::string pauli_label(int i, int j) {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  return {kNames[i], kNames[j]};
}

template <typename Scalar = double>
struct ReadoutNoise {
  ReadoutNoise(Scalar s, std::uint64_t sd) : sigma(s), seed(sd) {
    if (!(s >= Scalar(0)) || !std::isfinite(s)) {
      throw std::invalid_argument("ReadoutNoise: sigma must be finite and >= 0");
    }
  }
  Scalar sigma;
  std::uint64_t seed;
};

/// Exact Pauli coefficients plus i.i.d. N(0, sigma^2) noise on every
/// coefficient except II. Each coefficient draws from its own engine seeded
/// by (seed, index), so a record does not depend on evaluation order.
template <typename Scalar>
TomographyRecord<Scalar> tomograph(const DensityMatrix<Scalar>& rho, const ReadoutNoise<Scalar>& noise) {
  if (rho.dim() != 4) throw std::invalid_argument("tomograph: register state must be 4x4");
  TomographyRecord<Scalar> rec;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      rec(i, j) = (rho.matrix() * kron(pauli<Scalar>(i), pauli<Scalar>(j))).trace().real();
    }
  }
  if (noise.sigma == Scalar(0)) return rec;
  for (std::uint32_t idx = 1; idx < 16; ++idx) {
    std::seed_seq seq{static_cast<std::uint32_t>(noise.seed), static_cast<std::uint32_t>(noise.seed >> 32),
                      idx};
    std::mt19937_64 engine(seq);
    std::normal_distribution<Scalar> gauss(Scalar(0), noise.sigma);
    rec.coefficients[idx] += gauss(engine);
  }
  return rec;
}

/// (1/4) sum_ij c_ij P_i (x) P_j. No positivity repair.
template <typename Scalar>
Matrix<Scalar> reconstruct(const TomographyRecord<Scalar>& record) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m += record(i, j) * kron(pauli<Scalar>(i), pauli<Scalar>(j));
  }
  return m / Scalar(4);
}

/// The input state of the correlation experiment: pseudo-pure probe on |0>
/// and a maximally mixed system.
template <typename Scalar = double>
DensityMatrix<Scalar> fig2_input_state(Scalar epsilon = Scalar(1)) {
  return product_state(pseudo_pure(PseudoPureConfig<Scalar>(epsilon), PureState<Scalar>::zero()),
                       maximally_mixed<Scalar>());
}

/// |0><0| (x) I/2 - I/4
template <typename Scalar = double>
Matrix<Scalar> fig2_theory_deviation() {
  return deviation(product_state(pure_density(PureState<Scalar>::zero()), maximally_mixed<Scalar>()));
}

/// Tomographs the input state with readout noise and returns the overlap
/// fidelity of the reconstructed deviation matrix against the theoretical one.
template <typename Scalar = double>
Scalar fig2_fidelity_experiment(Scalar noise_sigma, std::uint64_t seed, Scalar epsilon = Scalar(1)) {
  const auto record = tomograph(fig2_input_state<Scalar>(epsilon), ReadoutNoise<Scalar>(noise_sigma, seed));
  const Matrix<Scalar> rho_hat = reconstruct(record);
  const Matrix<Scalar> dev = rho_hat - identity<Scalar>(4) / Scalar(4);
  return overlap_fidelity<Scalar>(dev, fig2_theory_deviation<Scalar>());
}

}  // namespace lgsim
