#include "geomq/measurement.hpp"

#include <cmath>
#include <unordered_set>

namespace geomq {

FiniteGPOVMeasure::FiniteGPOVMeasure(std::vector<double> outcomes,
                                     std::vector<HermitianOperator> effects)
    : outcomes_(std::move(outcomes)), effects_(std::move(effects)) {
  if (effects_.empty() || effects_.size() != outcomes_.size()) {
    throw std::invalid_argument("FiniteGPOVMeasure: outcomes/effects size mismatch");
  }
  const int n = effects_.front().dim();
  Matrix total = Matrix::Zero(n, n);
  for (const HermitianOperator& e : effects_) {
    if (e.dim() != n) throw std::invalid_argument("FiniteGPOVMeasure: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(e.matrix(), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kStateTol) {
      throw std::invalid_argument("FiniteGPOVMeasure: effect is not positive semidefinite");
    }
    total += e.matrix();
  }
  if ((total - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kStateTol) {
    throw std::invalid_argument("FiniteGPOVMeasure: effects do not sum to the identity");
  }
}

ResolutionOfIdentity::ResolutionOfIdentity(
    std::vector<HermitianOperator> projectors)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) {
    throw std::invalid_argument("ResolutionOfIdentity: empty family");
  }
  const int n = projectors_.front().dim();
  Matrix total = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    if (projectors_[i].dim() != n) {
      throw std::invalid_argument("ResolutionOfIdentity: dimension mismatch");
    }
    for (std::size_t j = 0; j < projectors_.size(); ++j) {
      const Matrix product = projectors_[i].matrix() * projectors_[j].matrix();
      const Matrix expected = i == j ? projectors_[j].matrix()
                                     : Matrix(Matrix::Zero(n, n));
      if ((product - expected).cwiseAbs().maxCoeff() > kStateTol) {
        throw std::invalid_argument("ResolutionOfIdentity: not mutually orthogonal projectors");
      }
    }
    total += projectors_[i].matrix();
  }
  if ((total - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kStateTol) {
    throw std::invalid_argument("ResolutionOfIdentity: projectors do not sum to the identity");
  }
}

FiniteGPOVMeasure gpov_from_observable(const HermitianOperator& a,
                                       double degeneracy_tol) {
  const EigenSystem es = eig_hermitian(a);
  std::vector<double> outcomes;
  std::vector<HermitianOperator> effects;
  int k = 0;
  while (k < a.dim()) {
    int j = k;
    Matrix projector = Matrix::Zero(a.dim(), a.dim());
    double value_sum = 0.0;
    while (j < a.dim() &&
           std::abs(es.eigenvalues[j] - es.eigenvalues[k]) <= degeneracy_tol) {
      projector += es.eigenvectors.col(j) * es.eigenvectors.col(j).adjoint();
      value_sum += es.eigenvalues[j];
      ++j;
    }
    outcomes.push_back(value_sum / (j - k));
    effects.emplace_back(std::move(projector));
    k = j;
  }
  return FiniteGPOVMeasure(std::move(outcomes), std::move(effects));
}

double probability(const FiniteGPOVMeasure& m, const std::vector<int>& delta,
                   const ProjectivePoint& pt) {
  if (m.dim() != pt.dim()) {
    throw std::invalid_argument("probability: dimension mismatch");
  }
  std::unordered_set<int> seen;
  const Vector& psi = pt.representative();
  double total = 0.0;
  for (int idx : delta) {
    if (idx < 0 || idx >= static_cast<int>(m.effects().size())) {
      throw std::invalid_argument("probability: outcome index out of range");
    }
    if (!seen.insert(idx).second) {
      throw std::invalid_argument("probability: duplicate outcome index");
    }
    total += psi.dot(m.effects()[idx].matrix() * psi).real();
  }
  return total;
}

RealVector probabilities_mixed(const ResolutionOfIdentity& e,
                               const QuantumState& s) {
  if (e.dim() != s.dim()) {
    throw std::invalid_argument("probabilities_mixed: dimension mismatch");
  }
  RealVector p(e.projectors().size());
  for (std::size_t j = 0; j < e.projectors().size(); ++j) {
    p[static_cast<Eigen::Index>(j)] =
        (s.matrix() * e.projectors()[j].matrix()).trace().real();
  }
  return p;
}

namespace {
constexpr long kChunkSize = 4096;

// splitmix64 sub-seed so chunk streams stay decoupled from one another.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (chunk + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

PairingEstimate pairing_integral(const QuantumState& s,
                                 const ExpectationFunction& f, long n_samples,
                                 std::uint64_t seed) {
  if (s.dim() != f.dim()) {
    throw std::invalid_argument("pairing_integral: dimension mismatch");
  }
  if (n_samples < 1000) {
    throw std::invalid_argument("pairing_integral: need at least 10^3 samples");
  }
  double sum = 0.0, sum_sq = 0.0;
  long drawn = 0;
  for (long chunk = 0; drawn < n_samples; ++chunk) {
    HaarSampler sampler(chunk_seed(seed, static_cast<std::uint64_t>(chunk)));
    const long in_chunk = std::min(kChunkSize, n_samples - drawn);
    for (long i = 0; i < in_chunk; ++i) {
      const ProjectivePoint pt = sampler.sample(s.dim());
      const double value = f(pt) * state_expectation(s, pt);
      sum += value;
      sum_sq += value * value;
    }
    drawn += in_chunk;
  }
  const double mean = sum / n_samples;
  const double var = (sum_sq - n_samples * mean * mean) /
                     (static_cast<double>(n_samples) * (n_samples - 1));
  return PairingEstimate{mean, std::sqrt(std::max(var, 0.0)), n_samples};
}

}  // namespace geomq
