#pragma once

#include <cstdint>
#include <vector>

#include "geomq/observables.hpp"

namespace geomq {

/// Geometric positive-operator-valued measure with finite support: outcomes
/// lambda_1..lambda_r paired with positive effects summing to the identity.
class FiniteGPOVMeasure {
 public:
  FiniteGPOVMeasure(std::vector<double> outcomes,
                    std::vector<HermitianOperator> effects);

  int dim() const { return effects_.front().dim(); }
  const std::vector<double>& outcomes() const { return outcomes_; }
  const std::vector<HermitianOperator>& effects() const { return effects_; }

 private:
  std::vector<double> outcomes_;
  std::vector<HermitianOperator> effects_;
};

/// Orthogonal resolution of the identity: E_i E_j = delta_ij E_j, sum = I.
class ResolutionOfIdentity {
 public:
  explicit ResolutionOfIdentity(std::vector<HermitianOperator> projectors);

  int dim() const { return projectors_.front().dim(); }
  const std::vector<HermitianOperator>& projectors() const { return projectors_; }

 private:
  std::vector<HermitianOperator> projectors_;
};

/// Spectral measure of an observable: eigenvalues as outcomes, spectral
/// projectors (degenerate eigenspaces summed) as effects.
FiniteGPOVMeasure gpov_from_observable(const HermitianOperator& a,
                                       double degeneracy_tol = kRankTol);

/// sum_{k in delta} <psi|E_k|psi> for a set of outcome indices.
double probability(const FiniteGPOVMeasure& m, const std::vector<int>& delta,
                   const ProjectivePoint& pt);

/// p_j = Tr(rho E_j).
RealVector probabilities_mixed(const ResolutionOfIdentity& e,
                               const QuantumState& s);

struct PairingEstimate {
  double estimate;
  double std_error;
  long n;
};

/// Monte-Carlo estimate of the pairing integral int f_a e_rho d nu over the
/// invariant measure, with standard error. Deterministic per seed; samples
/// are drawn in fixed chunks with per-chunk sub-seeding.
PairingEstimate pairing_integral(const QuantumState& s,
                                 const ExpectationFunction& f, long n_samples,
                                 std::uint64_t seed);

}  // namespace geomq
