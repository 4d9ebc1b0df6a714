// State constructors: pure states, mixtures, pseudo-pure probes, deviation
// matrices and the gradient-dephasing preparation of the maximally mixed state.
#pragma once

#include "lgsim/core.hpp"

#include <numbers>

namespace lgsim {

template <typename Scalar>
using Amplitudes = Eigen::Matrix<Complex<Scalar>, 2, 1>;

/// Normalized single-qubit state vector.
template <typename Scalar = double>
class PureState {
 public:
  explicit PureState(Amplitudes<Scalar> amps) : amps_(std::move(amps)) {
    if (!std::isfinite(amps_(0).real()) || !std::isfinite(amps_(0).imag()) ||
        !std::isfinite(amps_(1).real()) || !std::isfinite(amps_(1).imag())) {
      throw std::invalid_argument("PureState: non-finite amplitude");
    }
    if (std::abs(amps_.norm() - Scalar(1)) > tol<Scalar>(kTraceTol)) {
      throw std::invalid_argument("PureState: amplitudes are not normalized");
    }
  }
  PureState(Complex<Scalar> a0, Complex<Scalar> a1) : PureState(Amplitudes<Scalar>(a0, a1)) {}

  static PureState zero() { return PureState(1, 0); }
  static PureState one() { return PureState(0, 1); }
  static PureState plus() {
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    return PureState(r, r);
  }
  static PureState plus_i() {
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    return PureState(Complex<Scalar>(r), Complex<Scalar>(0, r));
  }

  const Amplitudes<Scalar>& amplitudes() const { return amps_; }

 private:
  Amplitudes<Scalar> amps_;
};

/// Probe polarization of a pseudo-pure state, 0 < epsilon <= 1.
template <typename Scalar = double>
class PseudoPureConfig {
 public:
  explicit PseudoPureConfig(Scalar epsilon) : epsilon_(epsilon) {
    if (!(epsilon > Scalar(0) && epsilon <= Scalar(1))) {
      throw std::invalid_argument("PseudoPureConfig: epsilon must lie in (0, 1]");
    }
  }
  Scalar epsilon() const { return epsilon_; }

 private:
  Scalar epsilon_;
};

/// Populations of a diagonal mixture p0|0><0| + p1|1><1|.
template <typename Scalar = double>
class MixturePopulations {
 public:
  MixturePopulations(Scalar p0, Scalar p1) : p0_(p0), p1_(p1) {
    if (!(p0 >= Scalar(0) && p1 >= Scalar(0)) ||
        std::abs(p0 + p1 - Scalar(1)) > tol<Scalar>(kTraceTol)) {
      throw std::invalid_argument("MixturePopulations: need p0, p1 >= 0 and p0 + p1 = 1");
    }
  }
  Scalar p0() const { return p0_; }
  Scalar p1() const { return p1_; }

 private:
  Scalar p0_;
  Scalar p1_;
};

template <typename Scalar>
DensityMatrix<Scalar> pure_density(const PureState<Scalar>& psi) {
  const auto& v = psi.amplitudes();
  return DensityMatrix<Scalar>(Matrix<Scalar>(v * v.adjoint()));
}

template <typename Scalar = double>
DensityMatrix<Scalar> maximally_mixed() {
  return DensityMatrix<Scalar>(Matrix<Scalar>(identity<Scalar>(2) / Scalar(2)));
}

template <typename Scalar>
DensityMatrix<Scalar> classical_mixture(const MixturePopulations<Scalar>& pops) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(2, 2);
  m(0, 0) = pops.p0();
  m(1, 1) = pops.p1();
  return DensityMatrix<Scalar>(std::move(m));
}

/// (1 - eps) I/2 + eps |psi><psi|
template <typename Scalar>
DensityMatrix<Scalar> pseudo_pure(const PseudoPureConfig<Scalar>& cfg, const PureState<Scalar>& psi) {
  const Scalar eps = cfg.epsilon();
  return DensityMatrix<Scalar>(Matrix<Scalar>((Scalar(1) - eps) * identity<Scalar>(2) / Scalar(2) +
                                              eps * pure_density(psi).matrix()));
}

/// Traceless part rho - I/dim.
template <typename Scalar>
Matrix<Scalar> deviation(const DensityMatrix<Scalar>& rho) {
  return rho.matrix() - identity<Scalar>(rho.dim()) / Scalar(rho.dim());
}

template <typename Scalar>
DensityMatrix<Scalar> product_state(const DensityMatrix<Scalar>& probe,
                                    const DensityMatrix<Scalar>& system) {
  return DensityMatrix<Scalar>(kron(probe.matrix(), system.matrix()));
}

/// |0><0| after a pi/2 rotation about x: a pure state on the Bloch equator.
template <typename Scalar = double>
DensityMatrix<Scalar> equator_state() {
  const auto rx = expm_hermitian<Scalar>(Matrix<Scalar>(pauli_x<Scalar>() / Scalar(2)),
                                         std::numbers::pi_v<Scalar> / Scalar(2));
  const Matrix<Scalar> ground = pure_density(PureState<Scalar>::zero()).matrix();
  return DensityMatrix<Scalar>(Matrix<Scalar>(rx.matrix() * ground * rx.matrix().adjoint()));
}

/// Simulates the pi/2 pulse + field gradient preparation of I/2: the equator
/// state is averaged over `n_phases` equally spaced z-rotations standing in
/// for spins at different positions along the gradient.
template <typename Scalar = double>
DensityMatrix<Scalar> gradient_dephase_prepare(int n_phases) {
  if (n_phases < 2) {
    throw std::invalid_argument("gradient_dephase_prepare: n_phases must be >= 2");
  }
  const Matrix<Scalar> start = equator_state<Scalar>().matrix();
  const Matrix<Scalar> half_z = pauli_z<Scalar>() / Scalar(2);
  Matrix<Scalar> acc = Matrix<Scalar>::Zero(2, 2);
  for (int j = 0; j < n_phases; ++j) {
    const Scalar phi = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(j) / Scalar(n_phases);
    const auto rz = expm_hermitian<Scalar>(half_z, phi);
    acc += rz.matrix() * start * rz.matrix().adjoint();
  }
  return DensityMatrix<Scalar>(Matrix<Scalar>(acc / Scalar(n_phases)));
}

}  // namespace lgsim
