#include "geomq/composition.hpp"

#include <cmath>

namespace geomq {

BipartiteSystem::BipartiteSystem(int a, int b) : dim_a(a), dim_b(b) {
  if (a < 1 || b < 1) {
    throw std::invalid_argument("BipartiteSystem: factor dimensions must be >= 1");
  }
}

CompositeDimensions composite_dimension(int dim_a, int dim_b) {
  BipartiteSystem sys(dim_a, dim_b);
  CompositeDimensions out;
  out.projective_dim = 2 * (sys.total() - 1);
  out.separable_dim = 2 * (dim_a - 1) + 2 * (dim_b - 1);
  return out;
}

QuantumState project_subsystem(const QuantumState& rho_ab,
                               const BipartiteSystem& sys, Subsystem which) {
  if (sys.total() != rho_ab.dim()) {
    throw std::invalid_argument("project_subsystem: dims do not factor the state");
  }
  return partial_trace(rho_ab, sys.dim_a, sys.dim_b, which);
}

double entanglement_measure(const QuantumState& rho_ab,
                            const BipartiteSystem& sys, int k) {
  if (k < 2) throw std::invalid_argument("entanglement_measure: k must be >= 2");
  if (sys.total() != rho_ab.dim()) {
    throw std::invalid_argument("entanglement_measure: dims do not factor the state");
  }
  const QuantumState rho_a = project_subsystem(rho_ab, sys, Subsystem::A);
  const QuantumState rho_b = project_subsystem(rho_ab, sys, Subsystem::B);
  const Matrix diff =
      rho_ab.matrix() - tensor_product(rho_a.matrix(), rho_b.matrix());
  Matrix power = diff;
  for (int j = 1; j < k; ++j) power = power * diff;
  return power.trace().real();
}

Trajectory projected_evolution(const HermitianOperator& h_ab,
                               const QuantumState& rho0_ab,
                               const BipartiteSystem& sys,
                               const FlowConfig& cfg) {
  if (h_ab.dim() != rho0_ab.dim() || sys.total() != rho0_ab.dim()) {
    throw std::invalid_argument("projected_evolution: dimension mismatch");
  }
  validate(cfg);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(project_subsystem(rho0_ab, sys, Subsystem::A));
  if (cfg.t_final == 0.0) return traj;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h_ab.matrix());
  auto propagator = [&](double t) {
    Vector d(h_ab.dim());
    for (int k = 0; k < h_ab.dim(); ++k) {
      d[k] = std::exp(-kImag * solver.eigenvalues()[k] * t);
    }
    return Matrix(solver.eigenvectors() * d.asDiagonal() *
                  solver.eigenvectors().adjoint());
  };

  const Matrix step_u = propagator(cfg.dt);
  Matrix rho = rho0_ab.matrix();
  const long n_steps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-12));
  for (long step = 1; step <= n_steps; ++step) {
    const bool last = step == n_steps;
    const double h = last ? cfg.t_final - (step - 1) * cfg.dt : cfg.dt;
    const double t = last ? cfg.t_final : step * cfg.dt;
    if (std::abs(h - cfg.dt) < 1e-15) {
      rho = step_u * rho * step_u.adjoint();
    } else {
      const Matrix u = propagator(h);
      rho = u * rho * u.adjoint();
    }
    if (step % cfg.record_every == 0 || last) {
      Matrix symmetrized = 0.5 * (rho + rho.adjoint().eval());
      traj.times.push_back(t);
      traj.states.push_back(project_subsystem(
          QuantumState(std::move(symmetrized), 1e-8, 1e-6, 1e-8), sys,
          Subsystem::A));
    }
  }
  return traj;
}

}  // namespace geomq
