// Dense complex linear algebra for one- and two-qubit operators.
//
// Every operator in this library is a square complex matrix of dimension 2
// (one qubit) or 4 (probe + system). Storage is a dynamic Eigen matrix with a
// compile-time cap of 4x4, so nothing here touches the heap.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lgsim {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::ColMajor, 4, 4>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;

using Matrixd = Matrix<double>;
using Complexd = Complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kJacobiThreshold = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

/// A tolerance stated for double, widened to 100 ulp-at-one for coarser
/// scalar types. For double every tolerance is used as written.
template <typename Scalar>
constexpr Scalar tol(double for_double) {
  const double floor = 100.0 * static_cast<double>(std::numeric_limits<Scalar>::epsilon());
  return static_cast<Scalar>(for_double > floor ? for_double : floor);
}

/// The two wires of the register. The probe is always the left Kronecker
/// factor, so basis index = 2 * probe_bit + system_bit.
enum class Wire { probe, system };

inline const char* to_string(Wire w) {
  switch (w) {
    case Wire::probe: return "probe";
    case Wire::system: return "system";
  }
  throw std::invalid_argument("invalid wire id");
}

namespace detail {

template <typename Scalar>
void require_square_dim(const Matrix<Scalar>& m, const char* what) {
  if (m.rows() != m.cols() || (m.rows() != 2 && m.rows() != 4)) {
    throw std::invalid_argument(std::string(what) + ": dimension must be 2 or 4, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

template <typename Scalar>
void require_finite(const Matrix<Scalar>& m, const char* what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const auto z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

template <typename Scalar>
void require_same_dim(const Matrix<Scalar>& a, const Matrix<Scalar>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace detail

template <typename Scalar = double>
Matrix<Scalar> identity(Eigen::Index dim) {
  return Matrix<Scalar>::Identity(dim, dim);
}

template <typename Scalar = double>
Matrix<Scalar> pauli_x() {
  Matrix<Scalar> m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> pauli_y() {
  const Complex<Scalar> i(0, 1);
  Matrix<Scalar> m(2, 2);
  m << Complex<Scalar>(0), -i, i, Complex<Scalar>(0);
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> pauli_z() {
  Matrix<Scalar> m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> hadamard() {
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  Matrix<Scalar> m(2, 2);
  m << r, r, r, -r;
  return m;
}

/// Pauli basis {I, X, Y, Z} by index 0..3.
template <typename Scalar = double>
Matrix<Scalar> pauli(int index) {
  switch (index) {
    case 0: return identity<Scalar>(2);
    case 1: return pauli_x<Scalar>();
    case 2: return pauli_y<Scalar>();
    case 3: return pauli_z<Scalar>();
    default: throw std::invalid_argument("pauli index must be in 0..3");
  }
}

template <typename Scalar>
Scalar max_abs(const Matrix<Scalar>& m) {
  return m.size() == 0 ? Scalar(0) : m.cwiseAbs().maxCoeff();
}

template <typename Scalar>
bool is_hermitian(const Matrix<Scalar>& m, Scalar eps = tol<Scalar>(kHermitianTol)) {
  return m.rows() == m.cols() && max_abs<Scalar>(m - m.adjoint()) <= eps;
}

template <typename Scalar>
bool approx_equal(const Matrix<Scalar>& a, const Matrix<Scalar>& b, Scalar eps) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs<Scalar>(a - b) <= eps;
}

template <typename Scalar>
Matrix<Scalar> matmul(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  detail::require_same_dim(a, b, "matmul");
  return a * b;
}

/// Kronecker product with `a` as the left (probe) factor. The result is
/// capped at 4x4.
template <typename Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > 4 || cols > 4) {
    throw std::invalid_argument("kron: result exceeds two qubits");
  }
  Matrix<Scalar> out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Scalar>
Matrix<Scalar> dagger(const Matrix<Scalar>& a) {
  return a.adjoint();
}

template <typename Scalar>
Complex<Scalar> trace(const Matrix<Scalar>& a) {
  return a.trace();
}

/// Eigen-decomposition of a Hermitian matrix.
template <typename Scalar>
struct HermitianEigen {
  RealVector<Scalar> values;   // ascending
  Matrix<Scalar> vectors;      // columns, unitary
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary, then zeroes it with a real Givens rotation. Sweeps continue until
/// the off-diagonal Frobenius norm drops below kJacobiThreshold scaled by
/// max(1, ||h||_F).
template <typename Scalar>
HermitianEigen<Scalar> eig_hermitian(const Matrix<Scalar>& h) {
  detail::require_square_dim(h, "eig_hermitian");
  detail::require_finite(h, "eig_hermitian");
  if (!is_hermitian<Scalar>(h)) {
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  }
  const Eigen::Index n = h.rows();
  // Exact Hermitian copy: fold the permitted asymmetry away before rotating.
  Matrix<Scalar> a = (h + h.adjoint()) / Scalar(2);
  Matrix<Scalar> v = identity<Scalar>(n);

  const Scalar scale = std::max(Scalar(1), a.norm());
  const auto off_norm = [&] {
    Scalar s = 0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = 0; q < n; ++q) {
        if (p != q) s += std::norm(a(p, q));
      }
    }
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > tol<Scalar>(kJacobiThreshold) * scale) {
    if (sweep++ == kJacobiMaxSweeps) {
      throw std::runtime_error("eig_hermitian: Jacobi iteration did not converge");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar mag = std::abs(a(p, q));
        if (mag == Scalar(0)) continue;
        const Complex<Scalar> phase = a(p, q) / mag;
        const Scalar app = a(p, p).real();
        const Scalar aqq = a(q, q).real();
        const Scalar tau = (aqq - app) / (Scalar(2) * mag);
        const Scalar t = (tau >= 0 ? Scalar(1) : Scalar(-1)) /
                         (std::abs(tau) + std::sqrt(Scalar(1) + tau * tau));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;

        Matrix<Scalar> j = identity<Scalar>(n);
        j(p, p) = c;
        j(p, q) = s;
        j(q, p) = -s * std::conj(phase);
        j(q, q) = c * std::conj(phase);
        a = j.adjoint() * a * j;
        v = v * j;
        a(p, q) = a(q, p) = Complex<Scalar>(0);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
    return a(l, l).real() < a(r, r).real();
  });
  HermitianEigen<Scalar> out{RealVector<Scalar>(n), Matrix<Scalar>(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

/// A unitary operator, checked on construction (U U^dagger = I entrywise).
template <typename Scalar = double>
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix<Scalar> m) : m_(std::move(m)) {
    detail::require_square_dim(m_, "UnitaryMatrix");
    detail::require_finite(m_, "UnitaryMatrix");
    const Matrix<Scalar> err = m_ * m_.adjoint() - identity<Scalar>(m_.rows());
    if (max_abs<Scalar>(err) > tol<Scalar>(kUnitaryTol)) {
      throw std::invalid_argument("UnitaryMatrix: U U^dagger != I");
    }
  }

  const Matrix<Scalar>& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix<Scalar> m_;
};

/// A physical state: Hermitian, unit trace, positive semidefinite.
template <typename Scalar = double>
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix<Scalar> m) : m_(std::move(m)) {
    detail::require_square_dim(m_, "DensityMatrix");
    detail::require_finite(m_, "DensityMatrix");
    if (!is_hermitian<Scalar>(m_)) {
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(m_.trace() - Complex<Scalar>(1)) > tol<Scalar>(kTraceTol)) {
      throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    if (eig_hermitian<Scalar>(m_).values(0) < -tol<Scalar>(kPositivityTol)) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }
  }

  const Matrix<Scalar>& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  Scalar purity() const { return (m_ * m_).trace().real(); }

 private:
  Matrix<Scalar> m_;
};

/// A dichotomic observable: Hermitian with O^2 = I, i.e. eigenvalues +-1.
template <typename Scalar = double>
class Observable {
 public:
  explicit Observable(Matrix<Scalar> m) : m_(std::move(m)) {
    detail::require_square_dim(m_, "Observable");
    detail::require_finite(m_, "Observable");
    if (m_.rows() != 2) throw std::invalid_argument("Observable: must act on one qubit");
    if (!is_hermitian<Scalar>(m_)) throw std::invalid_argument("Observable: not Hermitian");
    if (max_abs<Scalar>(m_ * m_ - identity<Scalar>(2)) > tol<Scalar>(kHermitianTol)) {
      throw std::invalid_argument("Observable: not dichotomic (O^2 != I)");
    }
  }

  const Matrix<Scalar>& matrix() const { return m_; }

 private:
  Matrix<Scalar> m_;
};

using UnitaryMatrixd = UnitaryMatrix<double>;
using DensityMatrixd = DensityMatrix<double>;
using Observabled = Observable<double>;

template <typename Scalar>
UnitaryMatrix<Scalar> dagger(const UnitaryMatrix<Scalar>& u) {
  return UnitaryMatrix<Scalar>(u.matrix().adjoint());
}

/// Reduced state of the kept wire of a two-qubit state.
template <typename Scalar>
DensityMatrix<Scalar> partial_trace(const DensityMatrix<Scalar>& rho, Wire keep) {
  if (rho.dim() != 4) throw std::invalid_argument("partial_trace: state must be two-qubit");
  const auto& m = rho.matrix();
  Matrix<Scalar> out = Matrix<Scalar>::Zero(2, 2);
  switch (keep) {
    case Wire::system:
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) out(s, t) = m(s, t) + m(2 + s, 2 + t);
      break;
    case Wire::probe:
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) out(p, q) = m(2 * p, 2 * q) + m(2 * p + 1, 2 * q + 1);
      break;
    default:
      throw std::invalid_argument("partial_trace: invalid wire id");
  }
  return DensityMatrix<Scalar>(std::move(out));
}

/// exp(-i * angle * h) for Hermitian h.
///
/// 2x2 inputs use the Pauli closed form h = a0 I + a.sigma:
///   exp(-i t h) = e^{-i t a0} (cos(t|a|) I - i sin(t|a|) (a/|a|).sigma).
/// 4x4 inputs go through the eigen-decomposition.
template <typename Scalar>
UnitaryMatrix<Scalar> expm_hermitian(const Matrix<Scalar>& h, Scalar angle) {
  detail::require_square_dim(h, "expm_hermitian");
  detail::require_finite(h, "expm_hermitian");
  if (!std::isfinite(angle)) throw std::invalid_argument("expm_hermitian: non-finite angle");
  if (!is_hermitian<Scalar>(h)) {
    throw std::invalid_argument("expm_hermitian: matrix is not Hermitian");
  }
  const Complex<Scalar> i(0, 1);
  if (h.rows() == 4) {
    const auto eig = eig_hermitian<Scalar>(h);
    Matrix<Scalar> phases = Matrix<Scalar>::Zero(4, 4);
    for (int k = 0; k < 4; ++k) phases(k, k) = std::exp(-i * angle * eig.values(k));
    return UnitaryMatrix<Scalar>(eig.vectors * phases * eig.vectors.adjoint());
  }

  const Scalar a0 = (h(0, 0).real() + h(1, 1).real()) / Scalar(2);
  const Scalar ax = (h(0, 1).real() + h(1, 0).real()) / Scalar(2);
  const Scalar ay = (h(1, 0).imag() - h(0, 1).imag()) / Scalar(2);
  const Scalar az = (h(0, 0).real() - h(1, 1).real()) / Scalar(2);
  const Scalar r = std::sqrt(ax * ax + ay * ay + az * az);

  Matrix<Scalar> u = std::cos(angle * r) * identity<Scalar>(2);
  if (r > Scalar(0)) {
    const Matrix<Scalar> axis =
        (ax * pauli_x<Scalar>() + ay * pauli_y<Scalar>() + az * pauli_z<Scalar>()) / r;
    u -= i * std::sin(angle * r) * axis;
  }
  return UnitaryMatrix<Scalar>(std::exp(-i * angle * a0) * u);
}

/// Half the sum of absolute eigenvalues of (a - b).
template <typename Scalar>
Scalar trace_distance(const DensityMatrix<Scalar>& a, const DensityMatrix<Scalar>& b) {
  detail::require_same_dim(a.matrix(), b.matrix(), "trace_distance");
  const Matrix<Scalar> diff = a.matrix() - b.matrix();
  // a and b are each Hermitian to kHermitianTol, so the difference may drift
  // past the eigen-solver's check; symmetrize it.
  const auto eig = eig_hermitian<Scalar>(Matrix<Scalar>((diff + diff.adjoint()) / Scalar(2)));
  return eig.values.cwiseAbs().sum() / Scalar(2);
}

/// Normalized Hilbert-Schmidt overlap Tr(ab) / sqrt(Tr(a^2) Tr(b^2)). Works on
/// traceless deviation matrices, unlike the Uhlmann fidelity.
template <typename Scalar>
Scalar overlap_fidelity(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  detail::require_same_dim(a, b, "overlap_fidelity");
  if (!is_hermitian<Scalar>(a) || !is_hermitian<Scalar>(b)) {
    throw std::invalid_argument("overlap_fidelity: inputs must be Hermitian");
  }
  const Scalar aa = (a * a).trace().real();
  const Scalar bb = (b * b).trace().real();
  if (aa <= Scalar(0) || bb <= Scalar(0)) {
    throw std::invalid_argument("overlap_fidelity: zero-norm input");
  }
  return (a * b).trace().real() / std::sqrt(aa * bb);
}

}  // namespace lgsim
