#pragma once

#include <cstdint>
#include <random>

#include "geomq/operators.hpp"

namespace geomq {

// The carrier space is CP(H), handled through gauge-fixed representatives:
// every ray stores one unit vector whose first component of modulus > 1e-12
// is real and positive. Tangent vectors are stored as horizontal lifts
// (orthogonal to the representative), which kills the second term of the
// pullback tensor identically.

/// A ray [psi] with its canonical unit representative.
class ProjectivePoint {
 public:
  /// Projects a nonzero vector to its ray (normalize + gauge fix).
  explicit ProjectivePoint(const Vector& psi);

  int dim() const { return static_cast<int>(rep_.size()); }
  const Vector& representative() const { return rep_; }

  /// Rays are equal iff |<psi1|psi2>| = 1 within tol.
  bool approx_equal(const ProjectivePoint& other, double tol = kStateTol) const;

 private:
  Vector rep_;
};

inline ProjectivePoint project_ray(const Vector& psi) {
  return ProjectivePoint(psi);
}

/// Horizontal tangent vector at a ray: <psi|v> = 0 within kStateTol.
class TangentVector {
 public:
  TangentVector(ProjectivePoint base, Vector horizontal);

  /// Projects an arbitrary ambient vector onto the horizontal subspace.
  static TangentVector horizontal_lift(const ProjectivePoint& base,
                                       const Vector& ambient);

  const ProjectivePoint& base() const { return base_; }
  const Vector& horizontal() const { return h_; }

 private:
  ProjectivePoint base_;
  Vector h_;
};

/// Pullback Hermitian tensor evaluated on two tangent vectors at the same
/// base point: <v|w> - <v|psi><psi|w>, conjugate-linear in the first slot.
/// Real part is the Fubini-Study metric g, imaginary part the symplectic
/// form omega.
Complex pullback_tensor(const TangentVector& v, const TangentVector& w);

inline double fs_metric(const TangentVector& v, const TangentVector& w) {
  return pullback_tensor(v, w).real();
}

inline double fs_symplectic(const TangentVector& v, const TangentVector& w) {
  return pullback_tensor(v, w).imag();
}

/// The complex structure J. Sign convention: J multiplies the horizontal
/// part by -i, which is the unique choice making g(v, J w) = omega(v, w)
/// hold together with the conjugate-in-first-slot pullback tensor above.
TangentVector apply_J(const TangentVector& v);

/// |<psi1|psi2>|^2 on unit representatives.
double transition_probability(const ProjectivePoint& p1,
                              const ProjectivePoint& p2);

/// Probability-amplitude chart: psi = sum_j sqrt(p_j) e^{i phi_j} |e_j>,
/// with |e_j> the columns of an orthonormal frame.
class AmplitudeChart {
 public:
  AmplitudeChart(Matrix basis, RealVector p, RealVector phi);

  /// Reads chart coordinates off an existing point.
  static AmplitudeChart from_point(const ProjectivePoint& pt,
                                   const Matrix& basis);

  const RealVector& p() const { return p_; }
  const RealVector& phi() const { return phi_; }
  const Matrix& basis() const { return basis_; }

  ProjectivePoint point() const;

  /// Tangent vector induced by chart displacements (dp, dphi); requires
  /// sum(dp) = 0 and an interior p. The result is phase-aligned with the
  /// canonical representative and horizontally projected.
  TangentVector tangent(const RealVector& dp, const RealVector& dphi) const;

 private:
  Vector raw_vector() const;

  Matrix basis_;
  RealVector p_;
  RealVector phi_;
};

struct ChartMetricBlocks {
  // Coefficient matrices of the quadratic form in (dp, dphi) coordinates on
  // the constraint surface sum(dp) = 0.
  RealMatrix fisher_block;  // (1/4)(diag(1/p) - 1 1^T)
  RealMatrix phase_block;   // diag(p) - p p^T
};

/// Metric blocks of the pullback tensor in the amplitude chart. Rejects
/// boundary points (any p_j <= 0).
ChartMetricBlocks amplitude_chart_metric(const RealVector& p);

/// Samples the unitarily invariant probability measure on CP^{dim-1}
/// (complex Gaussian vector, normalized). Deterministic per seed; hold one
/// sampler per thread.
class HaarSampler {
 public:
  explicit HaarSampler(std::uint64_t seed) : gen_(seed) {}

  ProjectivePoint sample(int dim);

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline ProjectivePoint haar_sample(int dim, std::uint64_t seed) {
  return HaarSampler(seed).sample(dim);
}

}  // namespace geomq
