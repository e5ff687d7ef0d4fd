#pragma once

#include <string>
#include <vector>

#include "geomq/observables.hpp"

namespace geomq {

/// GKLS generator data (H, {V_j}):
/// L(rho) = -i[H,rho] - 1/2 sum_j [V_j^dag V_j, rho]_+ + sum_j V_j rho V_j^dag.
class LindbladGenerator {
 public:
  LindbladGenerator(HermitianOperator h, std::vector<Matrix> v);

  int dim() const { return h_.dim(); }
  const HermitianOperator& hamiltonian() const { return h_; }
  const std::vector<Matrix>& lindblad_ops() const { return v_; }

  /// Sum_j V_j^dag V_j.
  const Matrix& dissipator_weight() const { return weight_; }

  // Deviations from the canonical form Tr V_j = 0, Tr(V_j^dag V_k) = 0 for
  // j != k are reported, not rejected.
  std::vector<std::string> canonical_form_warnings(double tol = kStateTol) const;

 private:
  HermitianOperator h_;
  std::vector<Matrix> v_;
  Matrix weight_;
};

enum class Integrator { rk4, exact_unitary };

struct FlowConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  Integrator integrator = Integrator::rk4;
  int record_every = 1;
  bool renormalize_trace = false;  // off: linearity preserves trace to integrator order
};

void validate(const FlowConfig& cfg);

struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
};

/// L(rho): Hermitian and traceless.
Matrix gkls_apply(const LindbladGenerator& gen, const QuantumState& rho);

struct GklsSplit {
  Matrix hamiltonian;  // -i[H, rho]
  Matrix gradient;     // -1/2 [sum V^dag V, rho]_+
  Matrix kraus;        // sum V rho V^dag
};

GklsSplit gkls_split(const LindbladGenerator& gen, const QuantumState& rho);

/// Trace-normalized gradient-like field: (b rho + rho b)/2 - Tr(b rho) rho.
Matrix nonlinear_gradient_vf(const HermitianOperator& b, const QuantumState& rho);

/// Trace-normalized jump field: sum V rho V^dag - Tr(sum V rho V^dag) rho.
Matrix nonlinear_kraus_vf(const std::vector<Matrix>& v, const QuantumState& rho);

/// Frobenius norm of (-i[H,rho] + nonlinear_gradient_vf(-sum V^dag V, rho)
/// + nonlinear_kraus_vf(V, rho)) - L(rho). The two trace nonlinearities
/// cancel, so this is a rounding-level residual for every input.
double cancellation_check(const LindbladGenerator& gen, const QuantumState& rho);

/// Fixed-step integration of rho' = L(rho): RK4, or exact conjugation by
/// e^{-iHt} when no Lindblad operators are present. Throws std::runtime_error
/// with a diagnostic if a recorded state drifts beyond the trajectory
/// tolerances (trace 1e-8, min eigenvalue -1e-6).
Trajectory integrate(const LindbladGenerator& gen, const QuantumState& rho0,
                     const FlowConfig& cfg);

/// Phase damping of a qubit: H = 0, V = {sqrt(gamma) sigma_3}, so that
/// L(rho) = -gamma (rho - sigma_3 rho sigma_3) and the Bloch field is
/// (-2 gamma x1, -2 gamma x2, 0).
LindbladGenerator phase_damping_generator(double gamma);

}  // namespace geomq
