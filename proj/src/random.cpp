#include "geomq/random.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace geomq {

namespace {
Vector random_vector(RandomEngine& rng, int dim) {
  std::normal_distribution<double> normal;
  Vector v(dim);
  for (int k = 0; k < dim; ++k) v[k] = Complex(normal(rng), normal(rng));
  return v;
}
}  // namespace

Matrix random_general(RandomEngine& rng, int dim, double scale) {
  std::normal_distribution<double> normal;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      m(i, j) = scale * Complex(normal(rng), normal(rng));
  return m;
}

HermitianOperator random_hermitian(RandomEngine& rng, int dim, double scale) {
  Matrix m = random_general(rng, dim, scale);
  return HermitianOperator(0.5 * (m + m.adjoint().eval()));
}

Matrix random_unitary(RandomEngine& rng, int dim) {
  Eigen::HouseholderQR<Matrix> qr(random_general(rng, dim));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

Matrix random_sl(RandomEngine& rng, int dim, double scale) {
  Matrix z = random_general(rng, dim, scale);
  z -= (z.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  return z.exp();
}

ProjectivePoint random_pure_point(RandomEngine& rng, int dim) {
  return ProjectivePoint(random_vector(rng, dim));
}

QuantumState random_density(RandomEngine& rng, int dim, int rank) {
  if (rank < 1 || rank > dim) {
    throw std::invalid_argument("random_density: rank must be in 1..dim");
  }
  std::uniform_real_distribution<double> uniform(0.5, 1.5);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix rho = Matrix::Zero(dim, dim);
    double total = 0.0;
    for (int k = 0; k < rank; ++k) {
      const Vector psi = random_vector(rng, dim).normalized();
      const double w = uniform(rng);
      rho += w * psi * psi.adjoint();
      total += w;
    }
    rho /= total;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
    const double cutoff = 1e-3 / dim;
    int above = 0;
    for (int k = 0; k < dim; ++k) {
      if (solver.eigenvalues()[k] > cutoff) ++above;
    }
    if (above == rank) return QuantumState(std::move(rho));
  }
  throw std::runtime_error("random_density: failed to draw a well-conditioned state");
}

TangentVector random_horizontal_tangent(RandomEngine& rng,
                                        const ProjectivePoint& base,
                                        double scale) {
  Vector v = scale * random_vector(rng, base.dim());
  return TangentVector::horizontal_lift(base, v);
}

}  // namespace geomq
