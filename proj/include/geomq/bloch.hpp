#pragma once

#include "geomq/states.hpp"

namespace geomq {

// Fully explicit qubit chart: rho = (sigma_0 + x . sigma)/2 with x in the
// closed unit ball. The bivector fields are fixed by the coordinate Poisson
// relations {x_j, x_k} = eps_jkl x_l, which ties them to the operator-level
// brackets under the [.,.]/(2i) convention; relative to a literal reading of
// the wedge expression eps_ijk x_i d_j ^ d_k this absorbs a factor 2.

struct BlochVector {
  explicit BlochVector(const Eigen::Vector3d& v);
  BlochVector(double x1, double x2, double x3)
      : BlochVector(Eigen::Vector3d(x1, x2, x3)) {}

  Eigen::Vector3d x;

  double norm() const { return x.norm(); }
};

/// Affine observable function f(x) = a0 + a . x.
struct AffineFunction {
  double a0 = 0.0;
  Eigen::Vector3d a = Eigen::Vector3d::Zero();

  double operator()(const BlochVector& v) const { return a0 + a.dot(v.x); }
};

/// x_j = Tr(rho sigma_j). Requires dim 2.
BlochVector bloch_from_state(const QuantumState& rho);

/// rho = (sigma_0 + x . sigma)/2.
QuantumState state_from_bloch(const BlochVector& v);

struct PauliCoefficients {
  double c0;
  Eigen::Vector3d c;
};

/// a = c0 sigma_0 + c . sigma for a 2x2 Hermitian operator.
PauliCoefficients pauli_coefficients(const HermitianOperator& a);

/// Affine function whose value equals e_a on the Bloch ball: (c0, c).
AffineFunction expectation_affine(const HermitianOperator& a);

// Single point where the operator/affine factor 2 lives: the Bloch image of
// the operator Hamiltonian field -i[c . sigma, rho] is 2 (c x x), so an
// affine function reproducing that flow needs coefficients a = 2c.
AffineFunction flow_affine(const HermitianOperator& a);

/// Poisson bivector pairing: Lambda(df, dg)(x) = (a x b) . x.
double lambda_eval(const BlochVector& x, const AffineFunction& f,
                   const AffineFunction& g);

/// Symmetric bivector pairing: R(df, dg)(x) = a . b - (a . x)(b . x).
double r_eval(const BlochVector& x, const AffineFunction& f,
              const AffineFunction& g);

struct QubitFields {
  Eigen::Vector3d hamiltonian;  // X_f = a x x
  Eigen::Vector3d gradient;     // Y_f = a - (a . x) x
};

QubitFields bloch_vector_fields(const AffineFunction& f, const BlochVector& x);

struct SphericalTensors {
  double r_rr;        // 1 - r^2
  double r_thth;      // 1 / r^2
  double r_phph;      // 1 / (r sin th)^2
  double lambda_thph;  // 1 / (r sin th)
};

/// Diagonal components of R and the single Lambda component in spherical
/// coordinates. Rejects the coordinate singularities r = 0, th in {0, pi}.
SphericalTensors spherical_tensors(double r, double theta, double phi);

struct CoordinateAlgebra {
  AffineFunction jordan;   // x_j o x_k = delta_jk (constant)
  AffineFunction poisson;  // {x_j, x_k} = eps_jkl x_l
};

/// The coordinate Lie-Jordan algebra for indices j, k in {1,2,3}.
CoordinateAlgebra coordinate_algebra(int j, int k);

}  // namespace geomq
