#include <doctest.h>

#include <cmath>

#include "geomq/bloch.hpp"
#include "geomq/observables.hpp"
#include "geomq/random.hpp"

using namespace geomq;

namespace {
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}

TEST_CASE("bloch map and its inverse") {
  Matrix zero = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const BlochVector north = bloch_from_state(QuantumState{zero});
  CHECK(north.x.isApprox(Eigen::Vector3d(0, 0, 1), 1e-14));

  CHECK(bloch_from_state(QuantumState{Matrix(0.5 * identity(2))}).x.norm() <
        1e-14);

  const QuantumState tilted{
      Matrix(0.5 * (identity(2) + 0.6 * pauli(1) + 0.8 * pauli(3)))};
  const BlochVector x = bloch_from_state(tilted);
  CHECK(x.x.isApprox(Eigen::Vector3d(0.6, 0.0, 0.8), 1e-13));
  CHECK(x.norm() == doctest::Approx(1.0));  // pure
  CHECK(tilted.purity() == doctest::Approx(1.0));

  CHECK(max_abs(state_from_bloch(x).matrix() - tilted.matrix()) < 1e-12);

  RandomEngine rng(3);
  const QuantumState rho3 = random_density(rng, 3, 2);
  CHECK_THROWS_AS(bloch_from_state(rho3), std::invalid_argument);
  CHECK_THROWS_AS(BlochVector(1.0, 0.0, 0.3), std::invalid_argument);
}

TEST_CASE("lambda pairing is the cross-product form") {
  const AffineFunction x1{0.0, Eigen::Vector3d::UnitX()};
  const AffineFunction x2{0.0, Eigen::Vector3d::UnitY()};
  const BlochVector x(0.2, -0.4, 0.7);

  CHECK(lambda_eval(x, x1, x2) == doctest::Approx(x.x[2]));
  CHECK(lambda_eval(x, x1, x1) == doctest::Approx(0.0));
  CHECK(lambda_eval(BlochVector(0, 0, 0), x1, x2) == doctest::Approx(0.0));

  // Radial directions pair to zero.
  const AffineFunction radial{0.0, 2.0 * x.x};
  CHECK(lambda_eval(x, radial, x2) == doctest::Approx(0.0));
}

TEST_CASE("r pairing and the coordinate Jordan relations") {
  const AffineFunction x1{0.0, Eigen::Vector3d::UnitX()};
  const AffineFunction x2{0.0, Eigen::Vector3d::UnitY()};
  const AffineFunction x3{0.0, Eigen::Vector3d::UnitZ()};
  const BlochVector center(0, 0, 0);

  CHECK(r_eval(center, x1, x1) == doctest::Approx(1.0));
  CHECK(r_eval(center, x1, x2) == doctest::Approx(0.0));
  CHECK(r_eval(BlochVector(0, 0, 1), x3, x3) == doctest::Approx(0.0));

  const BlochVector x(0.3, 0.5, -0.2);
  CHECK(r_eval(x, x1, x1) == doctest::Approx(1.0 - x.x[0] * x.x[0]));
}

TEST_CASE("bloch vector fields") {
  const AffineFunction a{0.0, Eigen::Vector3d::UnitZ()};
  const QubitFields at_x = bloch_vector_fields(a, BlochVector(1, 0, 0));
  CHECK(at_x.hamiltonian.isApprox(Eigen::Vector3d(0, 1, 0), 1e-14));
  CHECK(at_x.gradient.isApprox(Eigen::Vector3d(0, 0, 1), 1e-14));

  const QubitFields at_pole = bloch_vector_fields(a, BlochVector(0, 0, 1));
  CHECK(at_pole.hamiltonian.norm() < 1e-14);
  CHECK(at_pole.gradient.norm() < 1e-14);

  const AffineFunction b{0.3, Eigen::Vector3d(0.5, -1.0, 0.25)};
  const QubitFields at_center = bloch_vector_fields(b, BlochVector(0, 0, 0));
  CHECK(at_center.hamiltonian.norm() < 1e-14);
  CHECK(at_center.gradient.isApprox(b.a, 1e-14));

  RandomEngine rng(5);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::Vector3d raw(uniform(rng), uniform(rng), uniform(rng));
    const AffineFunction f{uniform(rng), raw};
    Eigen::Vector3d point(uniform(rng), uniform(rng), uniform(rng));
    if (point.norm() > 1.0) point.normalize();
    const BlochVector x(point);
    const QubitFields fields = bloch_vector_fields(f, x);
    CHECK(std::abs(x.x.dot(fields.hamiltonian)) < 1e-12);
    // x . Y = (a . x)(1 - |x|^2), zero exactly on the sphere.
    CHECK(x.x.dot(fields.gradient) ==
          doctest::Approx(f.a.dot(x.x) * (1.0 - x.x.squaredNorm())));
  }
}

TEST_CASE("spherical tensor components") {
  const SphericalTensors boundary = spherical_tensors(1.0, 1.1, 0.3);
  CHECK(boundary.r_rr == doctest::Approx(0.0));

  const SphericalTensors mid = spherical_tensors(0.5, M_PI / 2.0, 1.2);
  CHECK(mid.r_rr == doctest::Approx(0.75));
  CHECK(mid.r_thth == doctest::Approx(4.0));
  CHECK(mid.r_phph == doctest::Approx(4.0));
  CHECK(mid.lambda_thph == doctest::Approx(2.0));

  CHECK_THROWS_AS(spherical_tensors(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(spherical_tensors(0.5, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(spherical_tensors(0.5, M_PI, 0.0), std::invalid_argument);
}

TEST_CASE("spherical tensors agree with transported cartesian ones") {
  const double r = 0.63, theta = 1.1, phi = 2.4;
  const Eigen::Vector3d x(r * std::sin(theta) * std::cos(phi),
                          r * std::sin(theta) * std::sin(phi),
                          r * std::cos(theta));
  Eigen::Matrix3d jac;
  jac.row(0) = (x / r).transpose();
  jac.row(1) = Eigen::Vector3d(std::cos(theta) * std::cos(phi),
                               std::cos(theta) * std::sin(phi), -std::sin(theta))
                   .transpose() /
               r;
  jac.row(2) =
      Eigen::Vector3d(-std::sin(phi), std::cos(phi), 0.0).transpose() /
      (r * std::sin(theta));

  const Eigen::Matrix3d r_cart = Eigen::Matrix3d::Identity() - x * x.transpose();
  const Eigen::Matrix3d r_sph = jac * r_cart * jac.transpose();
  const SphericalTensors st = spherical_tensors(r, theta, phi);
  CHECK(r_sph(0, 0) == doctest::Approx(st.r_rr).epsilon(1e-10));
  CHECK(r_sph(1, 1) == doctest::Approx(st.r_thth).epsilon(1e-10));
  CHECK(r_sph(2, 2) == doctest::Approx(st.r_phph).epsilon(1e-10));
  CHECK(std::abs(r_sph(0, 1)) + std::abs(r_sph(0, 2)) + std::abs(r_sph(1, 2)) <
        1e-10);

  Eigen::Matrix3d lambda_cart;
  lambda_cart << 0, x[2], -x[1], -x[2], 0, x[0], x[1], -x[0], 0;
  const Eigen::Matrix3d lambda_sph = jac * lambda_cart * jac.transpose();
  CHECK(lambda_sph(1, 2) == doctest::Approx(st.lambda_thph).epsilon(1e-10));
  CHECK(std::abs(lambda_sph(0, 1)) + std::abs(lambda_sph(0, 2)) < 1e-12);
}

TEST_CASE("coordinate algebra") {
  const CoordinateAlgebra diag = coordinate_algebra(1, 1);
  CHECK(diag.jordan.a0 == doctest::Approx(1.0));
  CHECK(diag.jordan.a.norm() == doctest::Approx(0.0));
  CHECK(diag.poisson.a.norm() == doctest::Approx(0.0));

  const CoordinateAlgebra off = coordinate_algebra(1, 2);
  CHECK(off.jordan.a0 == doctest::Approx(0.0));
  CHECK(off.poisson.a.isApprox(Eigen::Vector3d::UnitZ(), 1e-14));

  const CoordinateAlgebra last = coordinate_algebra(3, 3);
  CHECK(last.jordan.a0 == doctest::Approx(1.0));
  CHECK(last.poisson.a.norm() == doctest::Approx(0.0));

  CHECK_THROWS_AS(coordinate_algebra(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(coordinate_algebra(1, 4), std::invalid_argument);

  // Operator oracle: (s_j s_k + s_k s_j)/2 = delta_jk I and
  // (s_j s_k - s_k s_j)/(2i) = eps_jkl s_l.
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      const CoordinateAlgebra alg = coordinate_algebra(j, k);
      const Matrix jordan = jordan_matrix(pauli(j), pauli(k));
      CHECK(max_abs(jordan - alg.jordan.a0 * identity(2)) < 1e-14);
      const Matrix poisson = commutator(pauli(j), pauli(k)) / (2.0 * kImag);
      CHECK(max_abs(poisson - pauli_combination(0.0, alg.poisson.a)) < 1e-14);
    }
  }
}

TEST_CASE("qubit bivectors match the operator brackets") {
  RandomEngine rng(7);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const HermitianOperator a = random_hermitian(rng, 2);
    const HermitianOperator b = random_hermitian(rng, 2);
    Eigen::Vector3d point(uniform(rng), uniform(rng), uniform(rng));
    point *= 0.9 / std::max(point.norm(), 1.0);
    const BlochVector x(point);
    const QuantumState rho = state_from_bloch(x);

    const AffineFunction fa = expectation_affine(a);
    const AffineFunction fb = expectation_affine(b);
    CHECK(fa(x) ==
          doctest::Approx((rho.matrix() * a.matrix()).trace().real()).epsilon(1e-12));

    const ExpectationFunction ea{a}, eb{b};
    const double op_poisson =
        (rho.matrix() * poisson_bracket(ea, eb).generator().matrix())
            .trace()
            .real();
    CHECK(lambda_eval(x, fa, fb) == doctest::Approx(op_poisson).epsilon(1e-10));

    const double op_jordan =
        (rho.matrix() * jordan_bracket(ea, eb).generator().matrix())
            .trace()
            .real();
    const double covariance = op_jordan - fa(x) * fb(x);
    CHECK(r_eval(x, fa, fb) == doctest::Approx(covariance).epsilon(1e-10));
  }
}

TEST_CASE("flow coefficient conversion carries the factor 2") {
  RandomEngine rng(11);
  const HermitianOperator a = random_hermitian(rng, 2);
  const BlochVector x(0.3, -0.2, 0.4);
  const QuantumState rho = state_from_bloch(x);

  // Bloch image of the operator Hamiltonian/gradient pair at rho(x). The
  // operator fields act on mixed states through the same formulas.
  const Matrix ham_op = hamiltonian_field_ambient(a.matrix(), rho.matrix());
  Eigen::Vector3d ham_velocity;
  for (int j = 0; j < 3; ++j) {
    ham_velocity[j] = (ham_op * pauli(j + 1)).trace().real();
  }
  const QubitFields fields = bloch_vector_fields(flow_affine(a), x);
  CHECK(ham_velocity.isApprox(fields.hamiltonian, 1e-10));

  const PauliCoefficients pc = pauli_coefficients(a);
  CHECK(flow_affine(a).a.isApprox(2.0 * pc.c, 1e-14));
  CHECK(expectation_affine(a).a.isApprox(pc.c, 1e-14));
}
