#pragma once

#include <complex>
#include <Eigen/Dense>

namespace geomq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default absolute tolerances used by type invariants.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kStateTol = 1e-10;
inline constexpr double kRankTol = 1e-8;

inline const Complex kImag{0.0, 1.0};

/// Pauli matrix sigma_j for j in {0,1,2,3} (sigma_0 = identity).
Matrix pauli(int j);

/// sigma_1 a1 + sigma_2 a2 + sigma_3 a3 + sigma_0 a0.
Matrix pauli_combination(double a0, const Eigen::Vector3d& a);

inline Matrix identity(int n) { return Matrix::Identity(n, n); }

inline bool is_hermitian(const Matrix& m, double tol = kHermitianTol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace geomq
