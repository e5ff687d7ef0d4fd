#include "geomq/projective.hpp"

#include <cmath>
#include <stdexcept>

namespace geomq {

namespace {
constexpr double kGaugeCutoff = 1e-12;  // "nonzero" component threshold
}

ProjectivePoint::ProjectivePoint(const Vector& psi) {
  if (psi.size() == 0) throw std::invalid_argument("project_ray: empty vector");
  const double norm = psi.norm();
  if (norm <= kGaugeCutoff) {
    throw std::invalid_argument("project_ray: zero vector has no ray");
  }
  rep_ = psi / norm;
  for (Eigen::Index k = 0; k < rep_.size(); ++k) {
    const Complex c = rep_[k];
    if (std::abs(c) > kGaugeCutoff) {
      rep_ *= std::conj(c) / std::abs(c);
      break;
    }
  }
}

bool ProjectivePoint::approx_equal(const ProjectivePoint& other,
                                   double tol) const {
  if (dim() != other.dim()) return false;
  return std::abs(std::abs(rep_.dot(other.rep_)) - 1.0) <= tol;
}

TangentVector::TangentVector(ProjectivePoint base, Vector horizontal)
    : base_(std::move(base)), h_(std::move(horizontal)) {
  if (h_.size() != base_.dim()) {
    throw std::invalid_argument("TangentVector: dimension mismatch");
  }
  if (std::abs(base_.representative().dot(h_)) > kStateTol * (1.0 + h_.norm())) {
    throw std::invalid_argument("TangentVector: not horizontal at the base point");
  }
}

TangentVector TangentVector::horizontal_lift(const ProjectivePoint& base,
                                             const Vector& ambient) {
  const Vector& psi = base.representative();
  Vector h = ambient - psi * psi.dot(ambient);
  return TangentVector(base, std::move(h));
}

Complex pullback_tensor(const TangentVector& v, const TangentVector& w) {
  if (!v.base().approx_equal(w.base())) {
    throw std::invalid_argument("pullback_tensor: tangent vectors live at different rays");
  }
  const Vector& psi = v.base().representative();
  // Second term vanishes for horizontal arguments; kept for exactness.
  return v.horizontal().dot(w.horizontal()) -
         v.horizontal().dot(psi) * psi.dot(w.horizontal());
}

TangentVector apply_J(const TangentVector& v) {
  return TangentVector(v.base(), Vector(-kImag * v.horizontal()));
}

double transition_probability(const ProjectivePoint& p1,
                              const ProjectivePoint& p2) {
  if (p1.dim() != p2.dim()) {
    throw std::invalid_argument("transition_probability: dimension mismatch");
  }
  return std::norm(p1.representative().dot(p2.representative()));
}

AmplitudeChart::AmplitudeChart(Matrix basis, RealVector p, RealVector phi)
    : basis_(std::move(basis)), p_(std::move(p)), phi_(std::move(phi)) {
  const Eigen::Index n = basis_.rows();
  if (basis_.cols() != n || p_.size() != n || phi_.size() != n) {
    throw std::invalid_argument("AmplitudeChart: frame/coordinate size mismatch");
  }
  if ((basis_.adjoint() * basis_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kStateTol) {
    throw std::invalid_argument("AmplitudeChart: frame is not orthonormal");
  }
  if (p_.minCoeff() < -kHermitianTol || std::abs(p_.sum() - 1.0) > kHermitianTol) {
    throw std::invalid_argument("AmplitudeChart: p is not a probability vector");
  }
  const double two_pi = 2.0 * M_PI;
  for (Eigen::Index j = 0; j < n; ++j) {
    phi_[j] = std::fmod(phi_[j], two_pi);
    if (phi_[j] < 0) phi_[j] += two_pi;
  }
}

AmplitudeChart AmplitudeChart::from_point(const ProjectivePoint& pt,
                                          const Matrix& basis) {
  Vector c = basis.adjoint() * pt.representative();
  RealVector p(c.size()), phi(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    p[j] = std::norm(c[j]);
    phi[j] = p[j] > 0 ? std::arg(c[j]) : 0.0;
  }
  return AmplitudeChart(basis, std::move(p), std::move(phi));
}

Vector AmplitudeChart::raw_vector() const {
  Vector psi = Vector::Zero(p_.size());
  for (Eigen::Index j = 0; j < p_.size(); ++j) {
    psi += std::sqrt(std::max(p_[j], 0.0)) * std::exp(kImag * phi_[j]) *
           basis_.col(j);
  }
  return psi;
}

ProjectivePoint AmplitudeChart::point() const {
  return ProjectivePoint(raw_vector());
}

TangentVector AmplitudeChart::tangent(const RealVector& dp,
                                      const RealVector& dphi) const {
  if (dp.size() != p_.size() || dphi.size() != p_.size()) {
    throw std::invalid_argument("AmplitudeChart::tangent: size mismatch");
  }
  if (std::abs(dp.sum()) > kStateTol * (1.0 + dp.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("AmplitudeChart::tangent: dp must sum to zero");
  }
  if (p_.minCoeff() <= 0.0) {
    throw std::invalid_argument("AmplitudeChart::tangent: boundary point (some p_j = 0)");
  }
  Vector raw = raw_vector();
  Vector dpsi = Vector::Zero(p_.size());
  for (Eigen::Index j = 0; j < p_.size(); ++j) {
    const Complex coeff(dp[j] / (2.0 * std::sqrt(p_[j])), 0.0);
    dpsi += (coeff + kImag * std::sqrt(p_[j]) * dphi[j]) *
            std::exp(kImag * phi_[j]) * basis_.col(j);
  }
  ProjectivePoint pt(raw);
  // Rotate the tangent by the same gauge phase applied to the representative.
  const Complex phase = raw.dot(pt.representative());
  return TangentVector::horizontal_lift(pt, Vector(phase * dpsi));
}

ChartMetricBlocks amplitude_chart_metric(const RealVector& p) {
  const Eigen::Index n = p.size();
  if (n == 0) throw std::invalid_argument("amplitude_chart_metric: empty p");
  if (p.minCoeff() <= 0.0) {
    throw std::invalid_argument("amplitude_chart_metric: boundary point (some p_j <= 0)");
  }
  if (std::abs(p.sum() - 1.0) > kHermitianTol) {
    throw std::invalid_argument("amplitude_chart_metric: p does not sum to 1");
  }
  ChartMetricBlocks out;
  out.fisher_block =
      0.25 * (RealMatrix(p.cwiseInverse().asDiagonal()) - RealMatrix::Ones(n, n));
  out.phase_block = RealMatrix(p.asDiagonal()) - p * p.transpose();
  return out;
}

ProjectivePoint HaarSampler::sample(int dim) {
  if (dim < 1) throw std::invalid_argument("haar_sample: dim must be >= 1");
  Vector psi(dim);
  do {
    for (int k = 0; k < dim; ++k) {
      psi[k] = Complex(normal_(gen_), normal_(gen_));
    }
  } while (psi.norm() <= 1e-8);
  return ProjectivePoint(psi);
}

}  // namespace geomq
