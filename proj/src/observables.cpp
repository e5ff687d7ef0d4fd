#include "geomq/observables.hpp"

#include <cmath>

namespace geomq {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void require_pure(const QuantumState& rho, const char* what) {
  if (std::abs(rho.purity() - 1.0) > kRankTol) {
    throw std::invalid_argument(std::string(what) + ": state is not pure");
  }
}

// V diag(f(lambda)) V^dagger for a Hermitian generator.
template <typename F>
Matrix hermitian_function(const HermitianOperator& a, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  Vector d(a.dim());
  for (int k = 0; k < a.dim(); ++k) d[k] = f(solver.eigenvalues()[k]);
  return solver.eigenvectors() * d.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

double ExpectationFunction::operator()(const ProjectivePoint& pt) const {
  require_same_dim(dim(), pt.dim(), "ExpectationFunction");
  const Vector& psi = pt.representative();
  return psi.dot(generator_.matrix() * psi).real();
}

ComplexObservableFunction::ComplexObservableFunction(Matrix generator)
    : generator_(std::move(generator)) {
  if (generator_.rows() == 0 || generator_.rows() != generator_.cols()) {
    throw std::invalid_argument("ComplexObservableFunction: generator must be square");
  }
}

Complex ComplexObservableFunction::operator()(const ProjectivePoint& pt) const {
  require_same_dim(dim(), pt.dim(), "ComplexObservableFunction");
  const Vector& psi = pt.representative();
  return psi.dot(generator_ * psi);
}

HermitianOperator ComplexObservableFunction::hermitian_part() const {
  return HermitianOperator(0.5 * (generator_ + generator_.adjoint()));
}

HermitianOperator ComplexObservableFunction::antihermitian_part() const {
  return HermitianOperator((generator_ - generator_.adjoint()) / (2.0 * kImag));
}

ExpectationFunction poisson_bracket(const ExpectationFunction& fa,
                                    const ExpectationFunction& fb,
                                    BracketConvention convention) {
  require_same_dim(fa.dim(), fb.dim(), "poisson_bracket");
  const Matrix comm = commutator(fa.generator().matrix(), fb.generator().matrix());
  Matrix gen = convention == BracketConvention::internal ? Matrix(comm / (2.0 * kImag))
                                                         : Matrix(kImag * comm);
  return ExpectationFunction(HermitianOperator(std::move(gen)));
}

ExpectationFunction jordan_bracket(const ExpectationFunction& fa,
                                   const ExpectationFunction& fb) {
  require_same_dim(fa.dim(), fb.dim(), "jordan_bracket");
  return ExpectationFunction(
      jordan_product(fa.generator(), fb.generator()));
}

SymmetricBracket::SymmetricBracket(ExpectationFunction fa, ExpectationFunction fb)
    : fa_(std::move(fa)),
      fb_(std::move(fb)),
      jordan_(jordan_bracket(fa_, fb_)) {}

double SymmetricBracket::operator()(const ProjectivePoint& pt) const {
  return jordan_(pt) - fa_(pt) * fb_(pt);
}

ComplexObservableFunction star_product(const ComplexObservableFunction& fa,
                                       const ComplexObservableFunction& fb) {
  require_same_dim(fa.dim(), fb.dim(), "star_product");
  return ComplexObservableFunction(fa.generator() * fb.generator());
}

Matrix hamiltonian_field_ambient(const Matrix& a, const Matrix& rho) {
  return -kImag * commutator(a, rho);
}

Matrix gradient_field_ambient(const Matrix& a, const Matrix& rho) {
  return a * rho + rho * a - 2.0 * (a * rho).trace() * rho;
}

Matrix hamiltonian_vf(const HermitianOperator& a, const QuantumState& rho) {
  require_same_dim(a.dim(), rho.dim(), "hamiltonian_vf");
  require_pure(rho, "hamiltonian_vf");
  return hamiltonian_field_ambient(a.matrix(), rho.matrix());
}

Matrix gradient_vf(const HermitianOperator& a, const QuantumState& rho) {
  require_same_dim(a.dim(), rho.dim(), "gradient_vf");
  require_pure(rho, "gradient_vf");
  return gradient_field_ambient(a.matrix(), rho.matrix());
}

ProjectivePoint hamiltonian_flow_pure(const HermitianOperator& a,
                                      const ProjectivePoint& pt, double t) {
  require_same_dim(a.dim(), pt.dim(), "hamiltonian_flow_pure");
  Matrix u = hermitian_function(
      a, [t](double lam) { return std::exp(-kImag * lam * t); });
  return ProjectivePoint(u * pt.representative());
}

ProjectivePoint gradient_flow_pure(const HermitianOperator& a,
                                   const ProjectivePoint& pt, double t) {
  require_same_dim(a.dim(), pt.dim(), "gradient_flow_pure");
  // Shift by the top eigenvalue: same ray, no overflow for large t.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  const double top = solver.eigenvalues().maxCoeff();
  Vector d(a.dim());
  for (int k = 0; k < a.dim(); ++k) {
    d[k] = std::exp(t * (solver.eigenvalues()[k] - top));
  }
  Vector moved = solver.eigenvectors() *
                 (d.asDiagonal() * (solver.eigenvectors().adjoint() * pt.representative()));
  return ProjectivePoint(moved);
}

std::vector<CriticalPoint> critical_spectrum(const HermitianOperator& a,
                                             double gap_tol) {
  EigenSystem es = eig_hermitian(a);
  for (int k = 0; k + 1 < a.dim(); ++k) {
    if (es.eigenvalues[k] - es.eigenvalues[k + 1] < gap_tol) {
      throw NonGenericObservable(
          "critical_spectrum: degenerate spectrum, critical points are not isolated");
    }
  }
  std::vector<CriticalPoint> out;
  out.reserve(a.dim());
  for (int k = 0; k < a.dim(); ++k) {
    out.push_back({ProjectivePoint(es.eigenvectors.col(k)), es.eigenvalues[k]});
  }
  return out;
}

namespace {

// Metric value after pushing (psi, v, w) through an invertible linear map m.
double transported_metric(const Matrix& m, const Vector& psi, const Vector& v,
                          const Vector& w) {
  Vector base = m * psi;
  const double n = base.norm();
  base /= n;
  Vector tv = (m * v) / n;
  Vector tw = (m * w) / n;
  tv -= base * base.dot(tv);
  tw -= base * base.dot(tw);
  return tv.dot(tw).real();
}

double flow_metric_difference(const HermitianOperator& a,
                              const ProjectivePoint& pt,
                              const TangentVector& v, const TangentVector& w,
                              double dt, bool unitary) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  auto propagator = [&](double t) {
    Vector d(a.dim());
    for (int k = 0; k < a.dim(); ++k) {
      d[k] = unitary ? std::exp(-kImag * solver.eigenvalues()[k] * t)
                     : Complex(std::exp(solver.eigenvalues()[k] * t), 0.0);
    }
    return Matrix(solver.eigenvectors() * d.asDiagonal() *
                  solver.eigenvectors().adjoint());
  };
  const Vector& psi = pt.representative();
  const double g_plus = transported_metric(propagator(dt), psi,
                                           v.horizontal(), w.horizontal());
  const double g_minus = transported_metric(propagator(-dt), psi,
                                            v.horizontal(), w.horizontal());
  return (g_plus - g_minus) / (2.0 * dt);
}

}  // namespace

double killing_residual(const HermitianOperator& a, const ProjectivePoint& pt,
                        const TangentVector& v, const TangentVector& w,
                        double dt) {
  require_same_dim(a.dim(), pt.dim(), "killing_residual");
  if (!v.base().approx_equal(pt) || !w.base().approx_equal(pt)) {
    throw std::invalid_argument("killing_residual: tangents not based at pt");
  }
  return flow_metric_difference(a, pt, v, w, dt, /*unitary=*/true);
}

double gradient_killing_residual(const HermitianOperator& a,
                                 const ProjectivePoint& pt,
                                 const TangentVector& v,
                                 const TangentVector& w, double dt) {
  require_same_dim(a.dim(), pt.dim(), "gradient_killing_residual");
  return flow_metric_difference(a, pt, v, w, dt, /*unitary=*/false);
}

}  // namespace geomq
