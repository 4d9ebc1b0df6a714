#include <doctest.h>

#include "test_support.hpp"

#include <numbers>

using namespace lgsim;
using lgsim::testing::uniform;

namespace {

constexpr double kPi = std::numbers::pi;
const Complexd I(0, 1);

// Heisenberg-picture sigma_z under H = sigma_x, expanded by hand:
// e^{i t sx} sz e^{-i t sx} = cos(2t) sz + sin(2t) sy.
Matrixd sz_at(double t) { return std::cos(2 * t) * pauli_z() + std::sin(2 * t) * pauli_y(); }

// e^{-i t sx} = cos t I - i sin t sx.
Matrixd evolve_x(double t) { return std::cos(t) * identity(2) - I * std::sin(t) * pauli_x(); }

DensityMatrixd probe_zero_with(const DensityMatrixd& sys) {
  return product_state(pure_density(PureState<>::zero()), sys);
}

}  // namespace

TEST_CASE("embed examples") {
  CHECK(approx_equal<double>(embed<double>(Hadamard<>{Wire::probe}).matrix(), kron<double>(hadamard(), identity(2)),
                             0.0));
  CHECK(approx_equal<double>(embed<double>(Hadamard<>{Wire::system}).matrix(), kron<double>(identity(2), hadamard()),
                             0.0));

  Matrixd cnot = Matrixd::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  CHECK(approx_equal<double>(
      embed<double>(ControlledU<>(Wire::probe, Wire::system, UnitaryMatrixd(pauli_x()))).matrix(), cnot, 0.0));

  Matrixd reversed = Matrixd::Zero(4, 4);
  reversed(0, 0) = reversed(2, 2) = reversed(1, 3) = reversed(3, 1) = 1;
  CHECK(approx_equal<double>(
      embed<double>(ControlledU<>(Wire::system, Wire::probe, UnitaryMatrixd(pauli_x()))).matrix(), reversed, 0.0));

  CHECK(approx_equal<double>(embed<double>(Evolve<>(Wire::system, pauli_x(), 0.0)).matrix(), identity(4), 0.0));
}

TEST_CASE("gate construction is validated") {
  CHECK_THROWS_AS(ControlledU<>(Wire::probe, Wire::probe, UnitaryMatrixd(pauli_x())), std::invalid_argument);
  Matrixd not_h = pauli_x();
  not_h(0, 1) = 3.0;
  CHECK_THROWS_AS(Evolve<>(Wire::system, not_h, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(Evolve<>(Wire::system, identity(4), 0.1), std::invalid_argument);
}

TEST_CASE("run examples") {
  std::mt19937_64 rng(21);
  const auto rho = lgsim::testing::random_density(rng, 4);
  Circuitd noop;
  noop.then(Evolve<>(Wire::system, pauli_x(), 0.0));
  CHECK(approx_equal<double>(run(noop, rho).matrix(), rho.matrix(), 1e-15));

  Circuitd h;
  h.then(Hadamard<>{Wire::probe});
  const auto out = run(h, probe_zero_with(pure_density(PureState<>::zero())));
  const auto expected = product_state(pure_density(PureState<>::plus()), pure_density(PureState<>::zero()));
  CHECK(approx_equal<double>(out.matrix(), expected.matrix(), 1e-15));

  CHECK_THROWS_AS(run(Circuitd{}, rho), std::invalid_argument);
  CHECK_THROWS_AS(run(h, maximally_mixed()), std::invalid_argument);
}

TEST_CASE("scattering circuit output is the interferometer state up to the free system evolution") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = uniform(rng, 0, 1);
    const PureState<> psi(std::sqrt(a), std::polar(std::sqrt(1 - a), uniform(rng, 0, 2 * kPi)));
    const double tk = uniform(rng, 0, 3);
    const double tm = tk + uniform(rng, 0, 3);

    const auto circuit = build_scattering_circuit<double>(pauli_x(), Observabled(pauli_z()), tk, tm);
    const auto out = run(circuit, probe_zero_with(pure_density(psi)));

    // |phi> = 1/2 [ |0> (I + U) psi + |1> (I - U) psi ],  U = O(t_m) O(t_k)
    const Matrixd u = sz_at(tm) * sz_at(tk);
    const Eigen::Vector2cd v = psi.amplitudes();
    Eigen::Vector4cd phi;
    phi << (v + u * v) / 2.0, (v - u * v) / 2.0;
    CHECK(std::abs(phi.squaredNorm() - 1.0) <= 1e-12);

    const Matrixd undo = kron<double>(identity(2), evolve_x(tm)).adjoint();
    const Matrixd aligned = undo * out.matrix() * undo.adjoint();
    CHECK(max_abs<double>(aligned - Matrixd(phi * phi.adjoint())) <= 1e-12);
  }
}

TEST_CASE("build_scattering_circuit shape and preconditions") {
  const Observabled sz(pauli_z());
  const auto c = build_scattering_circuit<double>(pauli_x(), sz, 0.2, 0.9);
  CHECK(c.size() == 6);
  CHECK(std::holds_alternative<Hadamard<>>(c.gates().front()));
  CHECK(std::holds_alternative<Hadamard<>>(c.gates().back()));
  CHECK(std::holds_alternative<ControlledU<>>(c.gates()[2]));
  CHECK(std::holds_alternative<ControlledU<>>(c.gates()[4]));
  CHECK_THROWS_AS(build_scattering_circuit<double>(pauli_x(), sz, 0.5, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(build_scattering_circuit<double>(pauli_x(), sz, -0.1, 0.4), std::invalid_argument);

  const auto zero = build_scattering_circuit<double>(pauli_x(), sz, 0.0, 0.0);
  CHECK(expect_probe_z(run(zero, probe_zero_with(maximally_mixed()))) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("probe readout matches the Heisenberg oracle on random inputs") {
  std::mt19937_64 rng(23);
  const Observabled sz(pauli_z());
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho_sys = lgsim::testing::random_density(rng, 2);
    const double tk = uniform(rng, 0, 2 * kPi);
    const double tm = tk + uniform(rng, 0, 2 * kPi);
    const auto out = run(build_scattering_circuit<double>(pauli_x(), sz, tk, tm), probe_zero_with(rho_sys));
    const Complexd oracle = (rho_sys.matrix() * sz_at(tm) * sz_at(tk)).trace();
    CHECK(std::abs(expect_probe_z(out) - oracle.real()) <= 1e-10);
    CHECK(std::abs(expect_probe_y(out) + oracle.imag()) <= 1e-10);
  }
}

TEST_CASE("for sigma_x evolution the readout is cos(2 (theta_m - theta_k)) on I/2") {
  const Observabled sz(pauli_z());
  for (double d : {0.1, 0.5, kPi / 6, 1.3}) {
    const auto out = run(build_scattering_circuit<double>(pauli_x(), sz, 0.3, 0.3 + d), probe_zero_with(maximally_mixed()));
    CHECK(expect_probe_z(out) == doctest::Approx(std::cos(2 * d)).epsilon(1e-12));
    CHECK(std::abs(expect_probe_y(out)) <= 1e-15);
  }
}

TEST_CASE("expect_probe_z and expect_probe_y examples") {
  std::mt19937_64 rng(24);
  const auto any = lgsim::testing::random_density(rng, 2);
  CHECK(expect_probe_z(product_state(pure_density(PureState<>::zero()), any)) == doctest::Approx(1.0));
  CHECK(expect_probe_z(product_state(pure_density(PureState<>::one()), any)) == doctest::Approx(-1.0));
  CHECK(expect_probe_z(product_state(maximally_mixed(), maximally_mixed())) == 0.0);
  CHECK(expect_probe_y(product_state(pure_density(PureState<>::plus_i()), maximally_mixed())) ==
        doctest::Approx(1.0));
  CHECK(expect_probe_y(product_state(pure_density(PureState<>::zero()), maximally_mixed())) == 0.0);
}

TEST_CASE("run preserves trace and positivity for random gate sequences") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    Circuitd c;
    for (int g = 0; g < 8; ++g) {
      const Wire w = (rng() & 1) ? Wire::probe : Wire::system;
      switch (rng() % 3) {
        case 0: c.then(Hadamard<>{w}); break;
        case 1: c.then(Evolve<>(w, lgsim::testing::random_hermitian(rng, 2), uniform(rng, -2, 2))); break;
        default:
          c.then(ControlledU<>(w, w == Wire::probe ? Wire::system : Wire::probe,
                               UnitaryMatrixd(lgsim::testing::random_unitary(rng, 2))));
      }
    }
    const auto out = run(c, lgsim::testing::random_density(rng, 4));
    CHECK(std::abs(trace(out.matrix()) - 1.0) <= 1e-12);
    CHECK(eig_hermitian(out.matrix()).values(0) >= -1e-10);
  }
}

TEST_CASE("the maximally mixed system is not disturbed by the circuit") {
  const Observabled sz(pauli_z());
  int points = 0;
  for (double tk : {0.0, 0.4, 1.1, 2.0, 3.0}) {
    for (double d : {0.0, kPi / 6, kPi / 4, 1.7, kPi}) {
      const auto out = run(build_scattering_circuit<double>(pauli_x(), sz, tk, tk + d), probe_zero_with(maximally_mixed()));
      CHECK(trace_distance(partial_trace(out, Wire::system), maximally_mixed()) <= 1e-12);
      ++points;
    }
  }
  CHECK(points == 25);
}

TEST_CASE("a pure system state is disturbed") {
  // theta_m - theta_k = pi/4 with H = sigma_x is dE dt = pi/2. The two branches
  // leave |0> as the sigma_y eigenstates, so the reduced state is I/2.
  const auto ground = pure_density(PureState<>::zero());
  const auto out = run(build_scattering_circuit<double>(pauli_x(), Observabled(pauli_z()), 0.0, kPi / 4),
                       probe_zero_with(ground));
  const double d = trace_distance(partial_trace(out, Wire::system), ground);
  CHECK(d > 0.1);
  CHECK(d == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("run over a gate range composes to the full run") {
  std::mt19937_64 rng(26);
  const auto c = build_scattering_circuit<double>(pauli_x(), Observabled(pauli_z()), 0.3, 1.4);
  const auto rho = lgsim::testing::random_density(rng, 4);
  const auto split = run(c, run(c, rho, 0, 5), 5);
  CHECK(approx_equal<double>(split.matrix(), run(c, rho).matrix(), 1e-14));
  CHECK_THROWS_AS(run(c, rho, 7), std::invalid_argument);
}
