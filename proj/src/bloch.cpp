#include "geomq/bloch.hpp"

#include <cmath>
#include <stdexcept>

namespace geomq {

BlochVector::BlochVector(const Eigen::Vector3d& v) : x(v) {
  if (x.norm() > 1.0 + kStateTol) {
    throw std::invalid_argument("BlochVector: outside the closed unit ball");
  }
}

BlochVector bloch_from_state(const QuantumState& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("bloch_from_state: dim must be 2");
  Eigen::Vector3d x;
  for (int j = 0; j < 3; ++j) {
    x[j] = (rho.matrix() * pauli(j + 1)).trace().real();
  }
  return BlochVector(x);
}

QuantumState state_from_bloch(const BlochVector& v) {
  return QuantumState(0.5 * pauli_combination(1.0, v.x));
}

PauliCoefficients pauli_coefficients(const HermitianOperator& a) {
  if (a.dim() != 2) throw std::invalid_argument("pauli_coefficients: dim must be 2");
  PauliCoefficients out;
  out.c0 = 0.5 * a.matrix().trace().real();
  for (int j = 0; j < 3; ++j) {
    out.c[j] = 0.5 * (a.matrix() * pauli(j + 1)).trace().real();
  }
  return out;
}

AffineFunction expectation_affine(const HermitianOperator& a) {
  const PauliCoefficients pc = pauli_coefficients(a);
  return AffineFunction{pc.c0, pc.c};
}

AffineFunction flow_affine(const HermitianOperator& a) {
  const PauliCoefficients pc = pauli_coefficients(a);
  return AffineFunction{0.0, 2.0 * pc.c};
}

double lambda_eval(const BlochVector& x, const AffineFunction& f,
                   const AffineFunction& g) {
  return f.a.cross(g.a).dot(x.x);
}

double r_eval(const BlochVector& x, const AffineFunction& f,
              const AffineFunction& g) {
  return f.a.dot(g.a) - f.a.dot(x.x) * g.a.dot(x.x);
}

QubitFields bloch_vector_fields(const AffineFunction& f, const BlochVector& x) {
  QubitFields out;
  out.hamiltonian = f.a.cross(x.x);
  out.gradient = f.a - f.a.dot(x.x) * x.x;
  return out;
}

SphericalTensors spherical_tensors(double r, double theta, double /*phi*/) {
  if (!(r > 0.0) || !(theta > 0.0) || !(theta < M_PI)) {
    throw std::invalid_argument(
        "spherical_tensors: coordinate singularity (need r > 0, 0 < theta < pi)");
  }
  const double s = std::sin(theta);
  SphericalTensors out;
  out.r_rr = 1.0 - r * r;
  out.r_thth = 1.0 / (r * r);
  out.r_phph = 1.0 / (r * r * s * s);
  out.lambda_thph = 1.0 / (r * s);
  return out;
}

CoordinateAlgebra coordinate_algebra(int j, int k) {
  if (j < 1 || j > 3 || k < 1 || k > 3) {
    throw std::invalid_argument("coordinate_algebra: indices must be in {1,2,3}");
  }
  Eigen::Vector3d ej = Eigen::Vector3d::Zero(), ek = Eigen::Vector3d::Zero();
  ej[j - 1] = 1.0;
  ek[k - 1] = 1.0;
  CoordinateAlgebra out;
  out.jordan = AffineFunction{j == k ? 1.0 : 0.0, Eigen::Vector3d::Zero()};
  out.poisson = AffineFunction{0.0, ej.cross(ek)};
  return out;
}

}  // namespace geomq
