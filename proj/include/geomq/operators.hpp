#pragma once

#include <stdexcept>
#include <vector>

#include "geomq/types.hpp"

namespace geomq {

// A square complex matrix with no symmetry constraint (group elements G,
// Lindblad operators V_j, operator products). Plain Eigen matrices are used
// directly; operations check squareness and dimension agreement.
using GeneralOperator = Matrix;

/// Hermitian operator a; entries must equal the conjugate transpose within
/// kHermitianTol (absolute, entrywise). Immutable value type.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries, double tol = kHermitianTol);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// Density operator rho: Hermitian, eigenvalues >= -eig_tol, trace 1.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix entries, double herm_tol = kHermitianTol,
                           double eig_tol = kStateTol,
                           double trace_tol = kStateTol);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  double purity() const { return (entries_ * entries_).trace().real(); }

 private:
  Matrix entries_;
};

enum class Subsystem { A, B };

/// ab - ba. Anti-symmetric; anti-Hermitian when a, b are Hermitian.
Matrix commutator(const Matrix& a, const Matrix& b);

/// ab + ba.
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// (ab + ba)/2 on raw matrices. Hermitian inputs give Hermitian output.
Matrix jordan_matrix(const Matrix& a, const Matrix& b);

HermitianOperator jordan_product(const HermitianOperator& a,
                                 const HermitianOperator& b);

/// Kronecker product, A-major ordering: index = iA * dimB + iB.
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Partial trace over the discarded factor of an (nA * nB)-dimensional
/// operator; `keep` selects which factor survives.
Matrix partial_trace_matrix(const Matrix& m, int dim_a, int dim_b,
                            Subsystem keep);

DensityOperator partial_trace(const DensityOperator& rho, int dim_a, int dim_b,
                              Subsystem keep);

struct EigenSystem {
  // Descending eigenvalues; ties broken lexicographically by the real parts
  // of the eigenvector entries so spectra are deterministic.
  RealVector eigenvalues;
  Matrix eigenvectors;  // orthonormal columns, eigenvectors[k] <-> eigenvalues[k]
};

EigenSystem eig_hermitian(const HermitianOperator& a);

/// Reassemble sum_k lambda_k v_k v_k^dagger.
Matrix eig_reconstruct(const EigenSystem& es);

}  // namespace geomq
