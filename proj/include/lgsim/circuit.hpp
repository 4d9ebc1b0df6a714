// The probe/system scattering circuit: gates, embedding into the two-qubit
// register, density-matrix execution and probe readout.
#pragma once

#include "lgsim/core.hpp"

#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

namespace lgsim {

template <typename Scalar = double>
struct Hadamard {
  Wire wire;
};

/// Free evolution exp(-i * phase * hamiltonian) on one wire.
template <typename Scalar = double>
struct Evolve {
  Evolve(Wire w, Matrix<Scalar> h, Scalar p) : wire(w), hamiltonian(std::move(h)), phase(p) {
    detail::require_finite(hamiltonian, "Evolve");
    if (hamiltonian.rows() != 2 || !is_hermitian<Scalar>(hamiltonian)) {
      throw std::invalid_argument("Evolve: hamiltonian must be a 2x2 Hermitian matrix");
    }
  }
  Wire wire;
  Matrix<Scalar> hamiltonian;
  Scalar phase;
};

/// |0><0|_control (x) I + |1><1|_control (x) u_target
template <typename Scalar = double>
struct ControlledU {
  ControlledU(Wire c, Wire t, UnitaryMatrix<Scalar> unitary) : control(c), target(t), u(std::move(unitary)) {
    if (control == target) throw std::invalid_argument("ControlledU: control and target coincide");
    if (u.dim() != 2) throw std::invalid_argument("ControlledU: u must be single-qubit");
  }
  Wire control;
  Wire target;
  UnitaryMatrix<Scalar> u;
};

template <typename Scalar = double>
using Gate = std::variant<Hadamard<Scalar>, Evolve<Scalar>, ControlledU<Scalar>>;

template <typename Scalar = double>
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::vector<Gate<Scalar>> gates) : gates_(std::move(gates)) {}

  Circuit& then(Gate<Scalar> g) {
    gates_.push_back(std::move(g));
    return *this;
  }

  const std::vector<Gate<Scalar>>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

 private:
  std::vector<Gate<Scalar>> gates_;
};

using Circuitd = Circuit<double>;

namespace detail {

template <typename Scalar>
Matrix<Scalar> on_wire(Wire w, const Matrix<Scalar>& u) {
  switch (w) {
    case Wire::probe: return kron(u, identity<Scalar>(2));
    case Wire::system: return kron(identity<Scalar>(2), u);
  }
  throw std::invalid_argument("invalid wire id");
}

template <typename Scalar>
Matrix<Scalar> projector(int bit) {
  Matrix<Scalar> p = Matrix<Scalar>::Zero(2, 2);
  p(bit, bit) = 1;
  return p;
}

}  // namespace detail

/// The 4x4 unitary a gate applies to the full register.
template <typename Scalar>
UnitaryMatrix<Scalar> embed(const Gate<Scalar>& gate) {
  struct Visitor {
    Matrix<Scalar> operator()(const Hadamard<Scalar>& g) const {
      return detail::on_wire(g.wire, hadamard<Scalar>());
    }
    Matrix<Scalar> operator()(const Evolve<Scalar>& g) const {
      return detail::on_wire(g.wire, expm_hermitian<Scalar>(g.hamiltonian, g.phase).matrix());
    }
    Matrix<Scalar> operator()(const ControlledU<Scalar>& g) const {
      const Matrix<Scalar> p0 = detail::projector<Scalar>(0);
      const Matrix<Scalar> p1 = detail::projector<Scalar>(1);
      const Matrix<Scalar> id = identity<Scalar>(2);
      if (g.control == Wire::probe) return kron(p0, id) + kron(p1, g.u.matrix());
      return kron(id, p0) + kron(g.u.matrix(), p1);
    }
  };
  return UnitaryMatrix<Scalar>(std::visit(Visitor{}, gate));
}

/// Product of the embedded gates in [first, last), applied left to right in
/// time order.
template <typename Scalar>
Matrix<Scalar> circuit_unitary(const Circuit<Scalar>& circuit, std::size_t first = 0,
                               std::size_t last = std::numeric_limits<std::size_t>::max()) {
  last = std::min(last, circuit.size());
  Matrix<Scalar> v = identity<Scalar>(4);
  for (std::size_t k = first; k < last; ++k) v = embed(circuit.gates()[k]).matrix() * v;
  return v;
}

/// rho_out = V rho V^dagger for the gates in [first, last). The default range
/// runs the whole circuit; partial ranges let a caller insert a channel between
/// two gates.
template <typename Scalar>
DensityMatrix<Scalar> run(const Circuit<Scalar>& circuit, const DensityMatrix<Scalar>& rho_in,
                          std::size_t first = 0,
                          std::size_t last = std::numeric_limits<std::size_t>::max()) {
  if (circuit.empty()) throw std::invalid_argument("run: circuit has no gates");
  if (rho_in.dim() != 4) throw std::invalid_argument("run: register state must be 4x4");
  if (first > std::min(last, circuit.size())) throw std::invalid_argument("run: bad gate range");
  const Matrix<Scalar> v = circuit_unitary(circuit, first, last);
  return DensityMatrix<Scalar>(Matrix<Scalar>(v * rho_in.matrix() * v.adjoint()));
}

/// Scattering circuit whose probe <sigma_z> reads Re Tr[rho_sys O(t_m) O(t_k)]:
///
///   H(probe), Evolve(system, t_k), C-O, Evolve(system, t_m - t_k), C-O, H(probe)
///
/// The controlled-U of the interferometer, with U = O(t_m) O(t_k) in the
/// Heisenberg picture, is split into two controlled-O gates between free
/// evolutions. The trailing system-only evolution e^{-i h t_m} is dropped: it
/// follows every controlled gate and commutes with probe readout.
template <typename Scalar>
Circuit<Scalar> build_scattering_circuit(const Matrix<Scalar>& h, const Observable<Scalar>& obs,
                                         Scalar theta_k, Scalar theta_m) {
  if (!(theta_k >= Scalar(0) && theta_m >= theta_k)) {
    throw std::invalid_argument("build_scattering_circuit: need theta_m >= theta_k >= 0");
  }
  const UnitaryMatrix<Scalar> o(obs.matrix());
  Circuit<Scalar> c;
  c.then(Hadamard<Scalar>{Wire::probe})
      .then(Evolve<Scalar>(Wire::system, h, theta_k))
      .then(ControlledU<Scalar>(Wire::probe, Wire::system, o))
      .then(Evolve<Scalar>(Wire::system, h, theta_m - theta_k))
      .then(ControlledU<Scalar>(Wire::probe, Wire::system, o))
      .then(Hadamard<Scalar>{Wire::probe});
  return c;
}

/// Tr[rho (sigma_z (x) I)]
template <typename Scalar>
Scalar expect_probe_z(const DensityMatrix<Scalar>& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("expect_probe_z: register state must be 4x4");
  return (rho.matrix() * kron(pauli_z<Scalar>(), identity<Scalar>(2))).trace().real();
}

/// Tr[rho (sigma_y (x) I)]. After the scattering circuit this reads
/// -Im Tr[rho_sys O(t_m) O(t_k)].
template <typename Scalar>
Scalar expect_probe_y(const DensityMatrix<Scalar>& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("expect_probe_y: register state must be 4x4");
  return (rho.matrix() * kron(pauli_y<Scalar>(), identity<Scalar>(2))).trace().real();
}

}  // namespace lgsim
