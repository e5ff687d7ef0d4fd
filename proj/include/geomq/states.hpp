#pragma once

#include <optional>
#include <vector>

#include "geomq/projective.hpp"

namespace geomq {

// Quantum states are density operators; the geometric picture reads them as
// the expectation-value functions e_rho on CP(H).
using QuantumState = DensityOperator;

/// A point of the trace-one affine ambient space T_1: Hermitian with unit
/// trace, positivity not required.
class TraceOnePoint {
 public:
  explicit TraceOnePoint(Matrix entries, double tol = kStateTol);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// Rank-one projector |psi><psi| of a ray.
QuantumState pure_projector(const ProjectivePoint& pt);

/// Number of eigenvalues above tol.
int state_rank(const QuantumState& s, double tol = kRankTol);

struct RankReport {
  int rank;
  double smallest_counted;                  // smallest eigenvalue above tol
  std::optional<double> largest_discarded;  // largest eigenvalue at or below tol
};

RankReport state_rank_report(const QuantumState& s, double tol = kRankTol);

/// G rho G^dagger / Tr(G rho G^dagger). Rejects singular G. Reduces to
/// unitary conjugation for unitary G and preserves rank.
QuantumState sl_action(const Matrix& g, const QuantumState& s);

/// True iff s is an extremal point of the convex body, i.e. Tr(rho^2) = 1
/// within tol, i.e. rank one.
bool is_extremal(const QuantumState& s, double tol = kRankTol);

QuantumState convex_combine(const std::vector<QuantumState>& states,
                            const std::vector<double>& weights);

/// e_rho evaluated at a ray: <psi|rho|psi> on the unit representative.
double state_expectation(const QuantumState& s, const ProjectivePoint& pt);

}  // namespace geomq
