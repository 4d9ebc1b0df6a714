#include <doctest.h>

#include "test_support.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <numbers>

using namespace lgsim;
using lgsim::testing::random_density;
using lgsim::testing::random_hermitian;

namespace {

const Complexd I(0, 1);
constexpr double kPi = std::numbers::pi;

Matrixd diag(std::initializer_list<double> d) {
  Matrixd m = Matrixd::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (double v : d) m(k, k) = v, ++k;
  return m;
}

Matrixd ket_bra(std::initializer_list<Complexd> v) {
  Eigen::Matrix<Complexd, Eigen::Dynamic, 1, 0, 4, 1> k(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto a : v) k(i++) = a;
  return k * k.adjoint();
}

// Independent exponential: Eigen's Pade-based matrix exponential.
Matrixd expm_reference(const Matrixd& h, double angle) {
  const Eigen::MatrixXcd a = Complexd(0, -angle) * Eigen::MatrixXcd(h);
  return Matrixd(a.exp());
}

}  // namespace

TEST_CASE("matmul follows the Pauli algebra") {
  CHECK(approx_equal<double>(matmul(pauli_x(), pauli_x()), identity(2), 0.0));
  CHECK(approx_equal<double>(matmul(pauli_x(), pauli_y()), I * pauli_z(), 0.0));
  std::mt19937_64 rng(1);
  const Matrixd a = lgsim::testing::random_ginibre(rng, 4);
  CHECK(approx_equal<double>(matmul<double>(identity(4), a), a, 0.0));
  CHECK_THROWS_AS(matmul<double>(identity(2), identity(4)), std::invalid_argument);
}

TEST_CASE("kron puts the probe on the left") {
  CHECK(approx_equal<double>(kron(ket_bra({1, 0}), Matrixd(identity(2) / 2.0)), diag({0.5, 0.5, 0, 0}), 0.0));
  CHECK(approx_equal<double>(kron<double>(identity(2), identity(2)), identity(4), 0.0));
  CHECK(approx_equal<double>(kron(pauli_z(), pauli_z()), diag({1, -1, -1, 1}), 0.0));
  CHECK_THROWS_AS(kron<double>(identity(4), identity(2)), std::invalid_argument);
}

TEST_CASE("dagger") {
  CHECK(approx_equal<double>(dagger(pauli_y()), pauli_y(), 0.0));
  const double theta = 0.37;
  CHECK(approx_equal<double>(dagger(expm_hermitian<double>(pauli_x(), theta).matrix()),
                             expm_hermitian<double>(pauli_x(), -theta).matrix(), 1e-15));
  std::mt19937_64 rng(2);
  const Matrixd a = lgsim::testing::random_ginibre(rng, 4);
  CHECK(approx_equal<double>(dagger(dagger(a)), a, 0.0));
}

TEST_CASE("trace") {
  CHECK(trace<double>(identity(4)) == Complexd(4));
  CHECK(trace<double>(pauli_x()) == Complexd(0));
  CHECK(trace(kron(ket_bra({1, 0}), Matrixd(identity(2) / 2.0))) == Complexd(1));
}

TEST_CASE("partial_trace examples") {
  const DensityMatrixd zz(diag({1, 0, 0, 0}));
  CHECK(approx_equal<double>(partial_trace(zz, Wire::system).matrix(), ket_bra({1, 0}), 0.0));

  const DensityMatrixd zmix(kron(ket_bra({1, 0}), Matrixd(identity(2) / 2.0)));
  CHECK(approx_equal<double>(partial_trace(zmix, Wire::system).matrix(), identity(2) / 2.0, 0.0));
  CHECK(approx_equal<double>(partial_trace(zmix, Wire::probe).matrix(), ket_bra({1, 0}), 0.0));

  const double r = 1.0 / std::sqrt(2.0);
  const DensityMatrixd bell(ket_bra({r, 0, 0, r}));
  CHECK(approx_equal<double>(partial_trace(bell, Wire::probe).matrix(), identity(2) / 2.0, 1e-15));

  CHECK_THROWS_AS(partial_trace(zz, static_cast<Wire>(7)), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(DensityMatrixd(ket_bra({1, 0})), Wire::system), std::invalid_argument);
}

TEST_CASE("expm_hermitian closed-form rotations") {
  CHECK(approx_equal<double>(expm_hermitian<double>(pauli_x(), kPi / 2).matrix(), -I * pauli_x(), 1e-15));
  CHECK(approx_equal<double>(expm_hermitian<double>(pauli_x(), 0.0).matrix(), identity(2), 0.0));
  CHECK(approx_equal<double>(expm_hermitian<double>(pauli_x(), kPi / 4).matrix(),
                             (identity(2) - I * pauli_x()) / std::sqrt(2.0), 1e-15));
  Matrixd not_hermitian = pauli_x();
  not_hermitian(0, 1) = 2.0;
  CHECK_THROWS_AS(expm_hermitian<double>(not_hermitian, 1.0), std::invalid_argument);
}

TEST_CASE("expm_hermitian agrees with Pade exponential, is unitary, and composes") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = trial % 4 == 0 ? 4 : 2;
    const Matrixd h = random_hermitian(rng, dim);
    const double s = lgsim::testing::uniform(rng, -3, 3);
    const double t = lgsim::testing::uniform(rng, -3, 3);
    const Matrixd us = expm_hermitian(h, s).matrix();
    const Matrixd ut = expm_hermitian(h, t).matrix();
    CHECK(max_abs<double>(us - expm_reference(h, s)) <= 1e-11);
    CHECK(max_abs<double>(us * us.adjoint() - identity(dim)) <= 1e-12);
    CHECK(max_abs<double>(us * ut - expm_hermitian(h, s + t).matrix()) <= 1e-12);
  }
}

TEST_CASE("eig_hermitian examples") {
  auto e = eig_hermitian<double>(pauli_z());
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));

  e = eig_hermitian<double>(pauli_x());
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  // Eigenvectors up to global phase: |<v|expected>| = 1.
  CHECK(std::abs(e.vectors.col(0).dot(Eigen::Vector2cd(r, -r))) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors.col(1).dot(Eigen::Vector2cd(r, r))) == doctest::Approx(1.0));

  e = eig_hermitian<double>(identity(2) / 2.0);
  CHECK(e.values(0) == 0.5);
  CHECK(e.values(1) == 0.5);

  Matrixd bad = pauli_y();
  bad(1, 0) = 0.0;
  CHECK_THROWS_AS(eig_hermitian(bad), std::invalid_argument);
}

TEST_CASE("eig_hermitian matches Eigen's self-adjoint solver and reconstructs") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index dim = trial % 2 ? 4 : 2;
    const Matrixd h = random_hermitian(rng, dim);
    const auto e = eig_hermitian(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(Eigen::MatrixXcd{h});
    for (Eigen::Index k = 0; k < dim; ++k) {
      CHECK(std::abs(e.values(k) - ref.eigenvalues()(k)) <= 1e-12);
      const auto v = e.vectors.col(k);
      CHECK((h * v - e.values(k) * v).norm() <= 1e-10);
    }
    CHECK(max_abs<double>(e.vectors * e.vectors.adjoint() - identity(dim)) <= 1e-12);
    Matrixd lambda = Matrixd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) lambda(k, k) = e.values(k);
    CHECK(max_abs<double>(e.vectors * lambda * e.vectors.adjoint() - h) <= 1e-10);
  }
}

TEST_CASE("eig_hermitian handles degenerate and already-diagonal spectra") {
  const auto e = eig_hermitian<double>(diag({2, -1, 2, -1}));
  CHECK(e.values(0) == -1.0);
  CHECK(e.values(1) == -1.0);
  CHECK(e.values(2) == 2.0);
  CHECK(e.values(3) == 2.0);
  const auto z = eig_hermitian<double>(Matrixd::Zero(4, 4));
  CHECK(z.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("trace_distance examples") {
  std::mt19937_64 rng(5);
  const auto rho = random_density(rng, 4);
  CHECK(trace_distance(rho, rho) == 0.0);
  const DensityMatrixd zero(ket_bra({1, 0}));
  const DensityMatrixd one(ket_bra({0, 1}));
  const DensityMatrixd half(Matrixd(identity(2) / 2.0));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
  CHECK(trace_distance(zero, half) == doctest::Approx(0.5));
  CHECK_THROWS_AS(trace_distance(zero, rho), std::invalid_argument);
}

TEST_CASE("trace_distance is a metric on random states") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index dim = trial % 2 ? 4 : 2;
    const auto a = random_density(rng, dim);
    const auto b = random_density(rng, dim);
    const auto c = random_density(rng, dim);
    const double ab = trace_distance(a, b);
    CHECK(std::abs(ab - trace_distance(b, a)) <= 1e-10);
    CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-10);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-12);
  }
}

TEST_CASE("overlap_fidelity") {
  const Matrixd dr = diag({0.25, 0.25, -0.25, -0.25});
  CHECK(overlap_fidelity(dr, dr) == doctest::Approx(1.0));
  CHECK(overlap_fidelity<double>(pauli_z(), -pauli_z()) == doctest::Approx(-1.0));
  CHECK(overlap_fidelity<double>(pauli_z(), pauli_x()) == 0.0);
  CHECK_THROWS_AS(overlap_fidelity<double>(Matrixd::Zero(2, 2), pauli_z()), std::invalid_argument);
  CHECK_THROWS_AS(overlap_fidelity<double>(pauli_z(), dr), std::invalid_argument);
}

TEST_CASE("kron and partial_trace properties on random operands") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrixd a = random_hermitian(rng, 2);
    const Matrixd b = random_hermitian(rng, 2);
    CHECK(std::abs(trace(kron(a, b)) - trace(a) * trace(b)) <= 1e-12);

    const auto ra = random_density(rng, 2);
    const auto rb = random_density(rng, 2);
    const DensityMatrixd joint(kron(ra.matrix(), rb.matrix()));
    CHECK(max_abs<double>(partial_trace(joint, Wire::probe).matrix() - ra.matrix()) <= 1e-12);
    CHECK(max_abs<double>(partial_trace(joint, Wire::system).matrix() - rb.matrix()) <= 1e-12);
  }
}

TEST_CASE("checked types reject invalid matrices") {
  CHECK_THROWS_AS(DensityMatrixd{diag({1, 0, 0})}, std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrixd{diag({0.6, 0.6})}, std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrixd{diag({1.5, -0.5})}, std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrixd{pauli_y()}, std::invalid_argument);
  Matrixd nan = identity(2) / 2.0;
  nan(0, 1) = std::nan("");
  CHECK_THROWS_AS(DensityMatrixd{nan}, std::invalid_argument);

  CHECK_THROWS_AS(UnitaryMatrixd{Matrixd(2.0 * identity(2))}, std::invalid_argument);
  CHECK_NOTHROW(UnitaryMatrixd{hadamard()});

  CHECK_THROWS_AS(Observabled{Matrixd(identity(2) / 2.0)}, std::invalid_argument);
  CHECK_NOTHROW(Observabled{pauli_x()});
  CHECK_THROWS_AS(Observabled{kron(pauli_z(), pauli_z())}, std::invalid_argument);
}

TEST_CASE("float instantiation") {
  const auto u = expm_hermitian<float>(pauli_x<float>(), 0.5f);
  const auto e = eig_hermitian<float>(pauli_z<float>());
  CHECK(std::abs(u.matrix()(0, 0).real() - std::cos(0.5f)) < 1e-6f);
  CHECK(e.values(0) == -1.0f);
}
