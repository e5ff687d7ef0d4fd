#include "geomq/operators.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace geomq {

Matrix pauli(int j) {
  Matrix m(2, 2);
  switch (j) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      throw std::invalid_argument("pauli index must be in 0..3");
  }
  return m;
}

Matrix pauli_combination(double a0, const Eigen::Vector3d& a) {
  Matrix m = a0 * pauli(0);
  for (int j = 0; j < 3; ++j) m += a[j] * pauli(j + 1);
  return m;
}

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries, double tol)
    : entries_(std::move(entries)) {
  require_square(entries_, "HermitianOperator");
  if (!is_hermitian(entries_, tol)) {
    throw std::invalid_argument("HermitianOperator: entries are not Hermitian within tolerance");
  }
}

DensityOperator::DensityOperator(Matrix entries, double herm_tol,
                                 double eig_tol, double trace_tol)
    : entries_(std::move(entries)) {
  require_square(entries_, "DensityOperator");
  if (!is_hermitian(entries_, herm_tol)) {
    throw std::invalid_argument("DensityOperator: not Hermitian within tolerance");
  }
  if (std::abs(entries_.trace() - Complex(1.0, 0.0)) > trace_tol) {
    throw std::invalid_argument("DensityOperator: trace differs from 1 beyond tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -eig_tol) {
    throw std::invalid_argument("DensityOperator: negative eigenvalue beyond tolerance");
  }
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

Matrix jordan_matrix(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "jordan_product");
  return 0.5 * (a * b + b * a);
}

HermitianOperator jordan_product(const HermitianOperator& a,
                                 const HermitianOperator& b) {
  return HermitianOperator(jordan_matrix(a.matrix(), b.matrix()));
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix partial_trace_matrix(const Matrix& m, int dim_a, int dim_b,
                            Subsystem keep) {
  require_square(m, "partial_trace");
  if (dim_a <= 0 || dim_b <= 0 ||
      static_cast<long>(dim_a) * dim_b != m.rows()) {
    throw std::invalid_argument("partial_trace: dims do not factor the operator dimension");
  }
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int b = 0; b < dim_b; ++b)
          out(i, j) += m(i * dim_b + b, j * dim_b + b);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a)
    for (int i = 0; i < dim_b; ++i)
      for (int j = 0; j < dim_b; ++j)
        out(i, j) += m(a * dim_b + i, a * dim_b + j);
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, int dim_a, int dim_b,
                              Subsystem keep) {
  return DensityOperator(partial_trace_matrix(rho.matrix(), dim_a, dim_b, keep));
}

EigenSystem eig_hermitian(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  const int n = a.dim();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const RealVector& ev = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();
  std::sort(order.begin(), order.end(), [&](int p, int q) {
    if (ev[p] != ev[q]) return ev[p] > ev[q];
    // Deterministic tie-break for exactly repeated eigenvalues.
    for (int r = 0; r < n; ++r) {
      double dp = vecs(r, p).real(), dq = vecs(r, q).real();
      if (dp != dq) return dp < dq;
    }
    return false;
  });
  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = ev[order[k]];
    out.eigenvectors.col(k) = vecs.col(order[k]);
  }
  return out;
}

Matrix eig_reconstruct(const EigenSystem& es) {
  const int n = static_cast<int>(es.eigenvalues.size());
  Matrix out = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    out += es.eigenvalues[k] * es.eigenvectors.col(k) *
           es.eigenvectors.col(k).adjoint();
  }
  return out;
}

}  // namespace geomq
