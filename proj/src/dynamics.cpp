#include "geomq/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace geomq {

LindbladGenerator::LindbladGenerator(HermitianOperator h, std::vector<Matrix> v)
    : h_(std::move(h)), v_(std::move(v)) {
  for (const Matrix& op : v_) {
    if (op.rows() != h_.dim() || op.cols() != h_.dim()) {
      throw std::invalid_argument("LindbladGenerator: operator dimension mismatch");
    }
  }
  weight_ = Matrix::Zero(h_.dim(), h_.dim());
  for (const Matrix& op : v_) weight_ += op.adjoint() * op;
}

std::vector<std::string> LindbladGenerator::canonical_form_warnings(double tol) const {
  std::vector<std::string> warnings;
  for (std::size_t j = 0; j < v_.size(); ++j) {
    if (std::abs(v_[j].trace()) > tol) {
      warnings.push_back("V_" + std::to_string(j) + " is not traceless");
    }
    for (std::size_t k = j + 1; k < v_.size(); ++k) {
      if (std::abs((v_[j].adjoint() * v_[k]).trace()) > tol) {
        warnings.push_back("V_" + std::to_string(j) + " and V_" +
                           std::to_string(k) + " are not orthogonal");
      }
    }
  }
  return warnings;
}

void validate(const FlowConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("FlowConfig: dt must be > 0");
  if (cfg.t_final < 0.0) throw std::invalid_argument("FlowConfig: t_final must be >= 0");
  if (cfg.t_final > 0.0 && cfg.dt > cfg.t_final + 1e-15) {
    throw std::invalid_argument("FlowConfig: dt must not exceed t_final");
  }
  if (cfg.record_every < 1) {
    throw std::invalid_argument("FlowConfig: record_every must be >= 1");
  }
}

namespace {

Matrix gkls_matrix(const LindbladGenerator& gen, const Matrix& rho) {
  Matrix out = -kImag * commutator(gen.hamiltonian().matrix(), rho);
  out -= 0.5 * anticommutator(gen.dissipator_weight(), rho);
  for (const Matrix& v : gen.lindblad_ops()) out += v * rho * v.adjoint();
  return out;
}

void require_dims(const LindbladGenerator& gen, const QuantumState& rho) {
  if (gen.dim() != rho.dim()) {
    throw std::invalid_argument("gkls: generator/state dimension mismatch");
  }
}

struct StateCheck {
  bool ok;
  std::string detail;
};

StateCheck check_trajectory_state(const Matrix& rho) {
  std::ostringstream msg;
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const double trace_drift = std::abs(rho.trace() - Complex(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      Matrix(0.5 * (rho + rho.adjoint())), Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (herm > 1e-8 || trace_drift > 1e-8 || min_eig < -1e-6) {
    msg << "hermiticity drift " << herm << ", trace drift " << trace_drift
        << ", min eigenvalue " << min_eig;
    return {false, msg.str()};
  }
  return {true, {}};
}

QuantumState record_state(const Matrix& rho, double t) {
  const StateCheck check = check_trajectory_state(rho);
  if (!check.ok) {
    std::ostringstream msg;
    msg << "integrate: state invariant violated at t = " << t << " (" << check.detail << ")";
    throw std::runtime_error(msg.str());
  }
  // Relaxed trajectory tolerances; symmetrize rounding first.
  return QuantumState(0.5 * (rho + rho.adjoint().eval()), 1e-8, 1e-6, 1e-8);
}

}  // namespace

Matrix gkls_apply(const LindbladGenerator& gen, const QuantumState& rho) {
  require_dims(gen, rho);
  return gkls_matrix(gen, rho.matrix());
}

GklsSplit gkls_split(const LindbladGenerator& gen, const QuantumState& rho) {
  require_dims(gen, rho);
  GklsSplit out;
  out.hamiltonian = -kImag * commutator(gen.hamiltonian().matrix(), rho.matrix());
  out.gradient = -0.5 * anticommutator(gen.dissipator_weight(), rho.matrix());
  out.kraus = Matrix::Zero(gen.dim(), gen.dim());
  for (const Matrix& v : gen.lindblad_ops()) {
    out.kraus += v * rho.matrix() * v.adjoint();
  }
  return out;
}

Matrix nonlinear_gradient_vf(const HermitianOperator& b, const QuantumState& rho) {
  if (b.dim() != rho.dim()) {
    throw std::invalid_argument("nonlinear_gradient_vf: dimension mismatch");
  }
  const Matrix& r = rho.matrix();
  return 0.5 * (b.matrix() * r + r * b.matrix()) - (b.matrix() * r).trace() * r;
}

Matrix nonlinear_kraus_vf(const std::vector<Matrix>& v, const QuantumState& rho) {
  const Matrix& r = rho.matrix();
  Matrix jump = Matrix::Zero(rho.dim(), rho.dim());
  for (const Matrix& op : v) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
      throw std::invalid_argument("nonlinear_kraus_vf: dimension mismatch");
    }
    jump += op * r * op.adjoint();
  }
  return jump - jump.trace() * r;
}

double cancellation_check(const LindbladGenerator& gen, const QuantumState& rho) {
  require_dims(gen, rho);
  const Matrix hamiltonian =
      -kImag * commutator(gen.hamiltonian().matrix(), rho.matrix());
  const HermitianOperator minus_weight(Matrix(-gen.dissipator_weight()));
  const Matrix recomposed = hamiltonian +
                            nonlinear_gradient_vf(minus_weight, rho) +
                            nonlinear_kraus_vf(gen.lindblad_ops(), rho);
  return (recomposed - gkls_apply(gen, rho)).norm();
}

Trajectory integrate(const LindbladGenerator& gen, const QuantumState& rho0,
                     const FlowConfig& cfg) {
  require_dims(gen, rho0);
  validate(cfg);
  if (cfg.integrator == Integrator::exact_unitary && !gen.lindblad_ops().empty()) {
    throw std::invalid_argument("integrate: exact-unitary integrator requires V = {}");
  }

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  if (cfg.t_final == 0.0) return traj;

  Matrix rho = rho0.matrix();
  Matrix step_unitary;
  if (cfg.integrator == Integrator::exact_unitary) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gen.hamiltonian().matrix());
    Vector d(gen.dim());
    for (int k = 0; k < gen.dim(); ++k) {
      d[k] = std::exp(-kImag * solver.eigenvalues()[k] * cfg.dt);
    }
    step_unitary = solver.eigenvectors() * d.asDiagonal() *
                   solver.eigenvectors().adjoint();
  }

  auto rk4_step = [&](const Matrix& state, double h) {
    const Matrix k1 = gkls_matrix(gen, state);
    const Matrix k2 = gkls_matrix(gen, Matrix(state + 0.5 * h * k1));
    const Matrix k3 = gkls_matrix(gen, Matrix(state + 0.5 * h * k2));
    const Matrix k4 = gkls_matrix(gen, Matrix(state + h * k3));
    return Matrix(state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };

  const long n_steps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-12));
  for (long step = 1; step <= n_steps; ++step) {
    const bool last = step == n_steps;
    const double h = last ? cfg.t_final - (step - 1) * cfg.dt : cfg.dt;
    const double t = last ? cfg.t_final : step * cfg.dt;
    if (cfg.integrator == Integrator::exact_unitary) {
      // Constant step size: the precomputed propagator covers all but a
      // possibly shorter final step.
      if (std::abs(h - cfg.dt) < 1e-15) {
        rho = step_unitary * rho * step_unitary.adjoint();
      } else {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(gen.hamiltonian().matrix());
        Vector d(gen.dim());
        for (int k = 0; k < gen.dim(); ++k) {
          d[k] = std::exp(-kImag * solver.eigenvalues()[k] * h);
        }
        const Matrix u = solver.eigenvectors() * d.asDiagonal() *
                         solver.eigenvectors().adjoint();
        rho = u * rho * u.adjoint();
      }
    } else {
      rho = rk4_step(rho, h);
    }
    if (cfg.renormalize_trace) rho /= rho.trace().real();
    if (step % cfg.record_every == 0 || last) {
      traj.times.push_back(t);
      traj.states.push_back(record_state(rho, t));
    }
  }
  return traj;
}

LindbladGenerator phase_damping_generator(double gamma) {
  if (gamma < 0.0) {
    throw std::invalid_argument("phase_damping_generator: gamma must be >= 0");
  }
  HermitianOperator h(Matrix(Matrix::Zero(2, 2)));
  std::vector<Matrix> v{std::sqrt(gamma) * pauli(3)};
  return LindbladGenerator(std::move(h), std::move(v));
}

}  // namespace geomq
