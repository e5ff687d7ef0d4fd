#include <doctest.h>

#include <cmath>

#include "geomq/bloch.hpp"
#include "geomq/dynamics.hpp"
#include "geomq/random.hpp"
#include "support/oracles.hpp"

using namespace geomq;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

QuantumState plus_projector() {
  Vector plus(2);
  plus << 1.0, 1.0;
  return pure_projector(ProjectivePoint(plus));
}

}  // namespace

TEST_CASE("generator construction and canonical-form warnings") {
  CHECK_THROWS_AS(LindbladGenerator(HermitianOperator{pauli(3)}, {identity(3)}),
                  std::invalid_argument);

  const LindbladGenerator damping = phase_damping_generator(0.5);
  CHECK(damping.canonical_form_warnings().empty());

  const LindbladGenerator messy(HermitianOperator{Matrix(Matrix::Zero(2, 2))},
                                {identity(2), pauli(3)});
  CHECK_FALSE(messy.canonical_form_warnings().empty());
}

TEST_CASE("gkls generator value") {
  RandomEngine rng(3);

  SUBCASE("closed-system limit") {
    const HermitianOperator h = random_hermitian(rng, 3);
    const LindbladGenerator gen(h, {});
    const QuantumState rho = random_density(rng, 3, 2);
    CHECK(max_abs(gkls_apply(gen, rho) +
                  kImag * commutator(h.matrix(), rho.matrix())) < 1e-14);
  }

  SUBCASE("phase damping at |+><+|") {
    for (double gamma : {0.5, 0.8}) {
      const Matrix l = gkls_apply(phase_damping_generator(gamma), plus_projector());
      Eigen::Vector3d velocity;
      for (int j = 0; j < 3; ++j) velocity[j] = (l * pauli(j + 1)).trace().real();
      CHECK(velocity.isApprox(Eigen::Vector3d(-2.0 * gamma, 0.0, 0.0), 1e-12));
    }
  }

  SUBCASE("unital-balanced operators fix the maximally mixed state") {
    Matrix raising = Matrix::Zero(2, 2), lowering = Matrix::Zero(2, 2);
    raising(0, 1) = 1.0;
    lowering(1, 0) = 1.0;
    const LindbladGenerator gen(HermitianOperator{Matrix(Matrix::Zero(2, 2))},
                                {raising, lowering});
    CHECK(max_abs(gkls_apply(gen, QuantumState{Matrix(0.5 * identity(2))})) <
          1e-14);
  }

  SUBCASE("hermitian and traceless") {
    const LindbladGenerator gen(random_hermitian(rng, 4),
                                {random_general(rng, 4), random_general(rng, 4)});
    const Matrix l = gkls_apply(gen, random_density(rng, 4, 3));
    CHECK(max_abs(l - l.adjoint().eval()) < 1e-12);
    CHECK(std::abs(l.trace()) < 1e-12);
  }
}

TEST_CASE("three-way splitting") {
  RandomEngine rng(5);

  SUBCASE("closed system pushes everything into the Hamiltonian term") {
    const HermitianOperator h = random_hermitian(rng, 2);
    const LindbladGenerator gen(h, {});
    const QuantumState rho = random_density(rng, 2, 2);
    const GklsSplit split = gkls_split(gen, rho);
    CHECK(max_abs(split.gradient) == 0.0);
    CHECK(max_abs(split.kraus) == 0.0);
    CHECK(max_abs(split.hamiltonian - gkls_apply(gen, rho)) < 1e-14);
  }

  SUBCASE("single sigma_3 jump operator") {
    const LindbladGenerator gen(HermitianOperator{Matrix(Matrix::Zero(2, 2))},
                                {pauli(3)});
    const QuantumState rho = random_density(rng, 2, 2);
    const GklsSplit split = gkls_split(gen, rho);
    CHECK(max_abs(split.gradient + rho.matrix()) < 1e-13);  // -1/2 [I, rho]_+
    CHECK(max_abs(split.kraus - pauli(3) * rho.matrix() * pauli(3)) < 1e-13);
    CHECK(max_abs(split.hamiltonian + split.gradient + split.kraus -
                  (pauli(3) * rho.matrix() * pauli(3) - rho.matrix())) < 1e-13);
  }

  SUBCASE("gradient and kraus traces balance") {
    const LindbladGenerator gen(random_hermitian(rng, 3),
                                {random_general(rng, 3)});
    const QuantumState rho = random_density(rng, 3, 3);
    const GklsSplit split = gkls_split(gen, rho);
    CHECK(std::abs(split.gradient.trace() + split.kraus.trace()) < 1e-12);
    CHECK(std::abs(split.hamiltonian.trace()) < 1e-12);
  }
}

TEST_CASE("nonlinear gradient field") {
  RandomEngine rng(7);
  const QuantumState rho = random_density(rng, 2, 2);
  CHECK(max_abs(nonlinear_gradient_vf(HermitianOperator{Matrix(identity(2))},
                                      rho)) < 1e-13);

  const Matrix half_sz = nonlinear_gradient_vf(
      HermitianOperator{pauli(3)}, QuantumState{Matrix(0.5 * identity(2))});
  CHECK(max_abs(half_sz - 0.5 * pauli(3)) < 1e-14);

  const QuantumState top = pure_projector(ProjectivePoint{Vector(Vector::Unit(2, 0))});
  CHECK(max_abs(nonlinear_gradient_vf(HermitianOperator{pauli(3)}, top)) <
        1e-14);
}

TEST_CASE("nonlinear kraus field") {
  RandomEngine rng(9);
  const QuantumState rho = random_density(rng, 2, 2);
  CHECK(max_abs(nonlinear_kraus_vf({identity(2)}, rho)) < 1e-14);
  CHECK(max_abs(nonlinear_kraus_vf({}, rho)) == 0.0);

  const QuantumState plus = plus_projector();
  const Matrix jump = nonlinear_kraus_vf({pauli(3)}, plus);
  CHECK(max_abs(jump - (pauli(3) * plus.matrix() * pauli(3) - plus.matrix())) <
        1e-14);
  Eigen::Vector3d velocity;
  for (int j = 0; j < 3; ++j) velocity[j] = (jump * pauli(j + 1)).trace().real();
  CHECK(velocity.isApprox(Eigen::Vector3d(-2.0, 0.0, 0.0), 1e-12));
}

TEST_CASE("the two nonlinearities cancel") {
  RandomEngine rng(11);
  for (int inst = 0; inst < 20; ++inst) {
    const int dim = 2 + inst % 3;
    const LindbladGenerator gen(random_hermitian(rng, dim),
                                {random_general(rng, dim),
                                 random_general(rng, dim, 0.7)});
    const QuantumState rho = random_density(rng, dim, 1 + inst % dim);
    CHECK(cancellation_check(gen, rho) < 1e-12);
  }

  const LindbladGenerator closed(random_hermitian(rng, 3), {});
  CHECK(cancellation_check(closed, random_density(rng, 3, 2)) == 0.0);

  const LindbladGenerator damping = phase_damping_generator(1.3);
  CHECK(cancellation_check(damping, random_density(rng, 2, 2)) < 1e-12);
}

TEST_CASE("integrate: closed qubit rotation") {
  const HermitianOperator h{pauli(3)};
  const LindbladGenerator gen(h, {});
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = M_PI / 2.0;
  cfg.record_every = 100;

  for (Integrator integrator : {Integrator::rk4, Integrator::exact_unitary}) {
    cfg.integrator = integrator;
    const Trajectory traj = integrate(gen, plus_projector(), cfg);
    const BlochVector x = bloch_from_state(traj.states.back());
    CHECK(x.x[0] == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(std::abs(x.x[1]) < 1e-8);
    CHECK(traj.times.back() == doctest::Approx(M_PI / 2.0));
  }
}

TEST_CASE("integrate matches the superoperator exponential oracle") {
  RandomEngine rng(13);
  const LindbladGenerator gen(random_hermitian(rng, 2),
                              {random_general(rng, 2, 0.6)});
  const QuantumState rho0 = random_density(rng, 2, 2);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 1.0;
  cfg.record_every = 1000;
  const Trajectory traj = integrate(gen, rho0, cfg);
  const Matrix oracle = testing::superop_evolve(gen, rho0.matrix(), 1.0);
  CHECK(max_abs(traj.states.back().matrix() - oracle) < 1e-6);
}

TEST_CASE("integrate: phase damping decay law") {
  const double gamma = 0.5;
  const LindbladGenerator gen = phase_damping_generator(gamma);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 1.0;
  cfg.record_every = 100;

  const QuantumState rho0 = state_from_bloch(BlochVector(1.0, 0.0, 0.0));
  const Trajectory traj = integrate(gen, rho0, cfg);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const BlochVector x = bloch_from_state(traj.states[k]);
    CHECK(std::abs(x.x[0] - std::exp(-2.0 * gamma * traj.times[k])) < 1e-6);
    CHECK(std::abs(x.x[2]) < 1e-9);
  }
  const BlochVector final_x = bloch_from_state(traj.states.back());
  CHECK(final_x.x[0] == doctest::Approx(0.36787944117144233).epsilon(1e-6));

  // x3 is frozen along the damping flow.
  const QuantumState tilted = state_from_bloch(BlochVector(0.8, 0.0, 0.3));
  const Trajectory traj2 = integrate(gen, tilted, cfg);
  for (std::size_t k = 0; k < traj2.times.size(); ++k) {
    const BlochVector x = bloch_from_state(traj2.states[k]);
    CHECK(std::abs(x.x[2] - 0.3) < 1e-9);
    CHECK(std::abs(x.x[0] - 0.8 * std::exp(-2.0 * gamma * traj2.times[k])) <
          1e-6);
  }
}

TEST_CASE("integrate edge cases") {
  const LindbladGenerator gen = phase_damping_generator(0.2);
  const QuantumState rho0 = state_from_bloch(BlochVector(0.4, 0.0, 0.2));

  FlowConfig zero_time;
  zero_time.dt = 0.1;
  zero_time.t_final = 0.0;
  const Trajectory traj = integrate(gen, rho0, zero_time);
  CHECK(traj.times.size() == 1);
  CHECK(max_abs(traj.states[0].matrix() - rho0.matrix()) == 0.0);

  FlowConfig bad;
  bad.dt = 2.0;
  bad.t_final = 1.0;
  CHECK_THROWS_AS(integrate(gen, rho0, bad), std::invalid_argument);

  FlowConfig unitary;
  unitary.integrator = Integrator::exact_unitary;
  CHECK_THROWS_AS(integrate(gen, rho0, unitary), std::invalid_argument);

  // A coarse step on a stiff generator blows past the state invariants and
  // aborts with a diagnostic.
  const LindbladGenerator stiff(HermitianOperator{Matrix(Matrix::Zero(2, 2))},
                                {Matrix(4.0 * pauli(1))});
  FlowConfig coarse;
  coarse.dt = 0.9;
  coarse.t_final = 20.0;
  CHECK_THROWS_AS(integrate(stiff, rho0, coarse), std::runtime_error);
}

TEST_CASE("integrated flow is linear in the initial state") {
  RandomEngine rng(17);
  const LindbladGenerator gen(random_hermitian(rng, 2),
                              {random_general(rng, 2, 0.5)});
  const QuantumState rho1 = random_density(rng, 2, 1);
  const QuantumState rho2 = random_density(rng, 2, 2);
  const double alpha = 0.25;
  FlowConfig cfg;
  cfg.dt = 0.01;
  cfg.t_final = 2.0;
  cfg.record_every = 20;
  const Trajectory t1 = integrate(gen, rho1, cfg);
  const Trajectory t2 = integrate(gen, rho2, cfg);
  const Trajectory mix =
      integrate(gen, convex_combine({rho1, rho2}, {alpha, 1.0 - alpha}), cfg);
  for (std::size_t k = 0; k < mix.states.size(); ++k) {
    CHECK(max_abs(mix.states[k].matrix() - alpha * t1.states[k].matrix() -
                  (1.0 - alpha) * t2.states[k].matrix()) < 1e-8);
  }
}

TEST_CASE("phase damping generator") {
  const LindbladGenerator zero = phase_damping_generator(0.0);
  RandomEngine rng(19);
  CHECK(max_abs(gkls_apply(zero, random_density(rng, 2, 2))) < 1e-14);

  CHECK_THROWS_AS(phase_damping_generator(-0.1), std::invalid_argument);

  const double gamma = 0.7;
  const LindbladGenerator gen = phase_damping_generator(gamma);
  const QuantumState rho = random_density(rng, 2, 2);
  const Matrix expected =
      -gamma * (rho.matrix() - pauli(3) * rho.matrix() * pauli(3));
  CHECK(max_abs(gkls_apply(gen, rho) - expected) < 1e-12);

  // Purity decreases monotonically along the damping flow.
  FlowConfig cfg;
  cfg.dt = 0.01;
  cfg.t_final = 2.0;
  cfg.record_every = 10;
  const Trajectory traj =
      integrate(gen, state_from_bloch(BlochVector(0.7, 0.2, 0.4)), cfg);
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    CHECK(traj.states[k].purity() <= traj.states[k - 1].purity() + 1e-12);
  }
}
