#include "geomq/states.hpp"

#include <cmath>
#include <stdexcept>

namespace geomq {

TraceOnePoint::TraceOnePoint(Matrix entries, double tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("TraceOnePoint: matrix must be square");
  }
  if (!is_hermitian(entries_, tol)) {
    throw std::invalid_argument("TraceOnePoint: not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0, 0.0)) > tol) {
    throw std::invalid_argument("TraceOnePoint: trace differs from 1");
  }
}

QuantumState pure_projector(const ProjectivePoint& pt) {
  const Vector& psi = pt.representative();
  return QuantumState(psi * psi.adjoint());
}

int state_rank(const QuantumState& s, double tol) {
  return state_rank_report(s, tol).rank;
}

RankReport state_rank_report(const QuantumState& s, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.matrix(), Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();  // ascending
  RankReport report{0, 0.0, std::nullopt};
  for (Eigen::Index k = ev.size() - 1; k >= 0; --k) {
    if (ev[k] > tol) {
      ++report.rank;
      report.smallest_counted = ev[k];
    } else {
      report.largest_discarded = ev[k];
      break;
    }
  }
  return report;
}

QuantumState sl_action(const Matrix& g, const QuantumState& s) {
  if (g.rows() != g.cols() || g.rows() != s.dim()) {
    throw std::invalid_argument("sl_action: dimension mismatch");
  }
  Eigen::FullPivLU<Matrix> lu(g);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("sl_action: singular group element");
  }
  Matrix moved = g * s.matrix() * g.adjoint();
  const double norm = moved.trace().real();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("sl_action: degenerate normalization");
  }
  moved /= norm;
  // Symmetrize away rounding before revalidation.
  moved = 0.5 * (moved + moved.adjoint().eval());
  return QuantumState(std::move(moved));
}

bool is_extremal(const QuantumState& s, double tol) {
  return std::abs(s.purity() - 1.0) <= tol;
}

QuantumState convex_combine(const std::vector<QuantumState>& states,
                            const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw std::invalid_argument("convex_combine: states/weights size mismatch");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < -kStateTol) throw std::invalid_argument("convex_combine: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kStateTol) {
    throw std::invalid_argument("convex_combine: weights do not sum to 1");
  }
  Matrix mix = Matrix::Zero(states[0].dim(), states[0].dim());
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].dim() != states[0].dim()) {
      throw std::invalid_argument("convex_combine: dimension mismatch");
    }
    mix += weights[k] * states[k].matrix();
  }
  return QuantumState(std::move(mix));
}

double state_expectation(const QuantumState& s, const ProjectivePoint& pt) {
  if (s.dim() != pt.dim()) {
    throw std::invalid_argument("state_expectation: dimension mismatch");
  }
  const Vector& psi = pt.representative();
  return psi.dot(s.matrix() * psi).real();
}

}  // namespace geomq
