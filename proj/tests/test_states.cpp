#include <doctest.h>

#include <cmath>

#include "geomq/bloch.hpp"
#include "geomq/random.hpp"
#include "geomq/states.hpp"

using namespace geomq;

namespace {
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
}

TEST_CASE("pure projector") {
  const QuantumState zero = pure_projector(ProjectivePoint{Vector(Vector::Unit(2, 0))});
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK(max_abs(zero.matrix() - expected) < 1e-15);

  Vector plus(2);
  plus << 1.0, 1.0;
  const QuantumState plus_state = pure_projector(ProjectivePoint(plus));
  CHECK(max_abs(plus_state.matrix() - 0.5 * (identity(2) + pauli(1))) < 1e-15);

  // Idempotency and eigenray round trip.
  RandomEngine rng(3);
  const ProjectivePoint pt = random_pure_point(rng, 4);
  const QuantumState rho = pure_projector(pt);
  CHECK(max_abs(rho.matrix() * rho.matrix() - rho.matrix()) < 1e-12);
  const EigenSystem es = eig_hermitian(HermitianOperator{rho.matrix()});
  CHECK(ProjectivePoint(es.eigenvectors.col(0)).approx_equal(pt));
}

TEST_CASE("state rank") {
  RandomEngine rng(7);
  CHECK(state_rank(pure_projector(random_pure_point(rng, 3))) == 1);
  CHECK(state_rank(QuantumState{Matrix(identity(4) / 4.0)}) == 4);

  Matrix partial = Matrix::Zero(4, 4);
  partial(0, 0) = 0.7;
  partial(1, 1) = 0.3;
  CHECK(state_rank(QuantumState{partial}) == 2);

  const RankReport report = state_rank_report(QuantumState{partial});
  CHECK(report.rank == 2);
  CHECK(report.smallest_counted == doctest::Approx(0.3));
  REQUIRE(report.largest_discarded.has_value());
  CHECK(std::abs(*report.largest_discarded) < 1e-12);
}

TEST_CASE("sl action") {
  RandomEngine rng(11);
  const QuantumState rho = random_density(rng, 3, 2);

  SUBCASE("unitary reduces to conjugation") {
    const Matrix u = random_unitary(rng, 3);
    CHECK(max_abs(sl_action(u, rho).matrix() - u * rho.matrix() * u.adjoint()) <
          1e-12);
  }

  SUBCASE("identity is neutral") {
    CHECK(max_abs(sl_action(identity(3), rho).matrix() - rho.matrix()) < 1e-14);
  }

  SUBCASE("hyperbolic squeeze of the maximally mixed qubit") {
    Matrix g = Matrix::Zero(2, 2);
    g(0, 0) = std::exp(1.0);
    g(1, 1) = std::exp(-1.0);
    const QuantumState moved = sl_action(g, QuantumState{Matrix(0.5 * identity(2))});
    CHECK(bloch_from_state(moved).x[2] == doctest::Approx(std::tanh(2.0)));
    CHECK(bloch_from_state(moved).x[2] == doctest::Approx(0.96402758007581688));
  }

  SUBCASE("group action property") {
    const Matrix g1 = random_sl(rng, 3);
    const Matrix g2 = random_sl(rng, 3);
    CHECK(max_abs(sl_action(g1, sl_action(g2, rho)).matrix() -
                  sl_action(Matrix(g1 * g2), rho).matrix()) < 1e-10);
  }

  SUBCASE("rank is preserved") {
    for (int rank = 1; rank <= 3; ++rank) {
      const QuantumState state = random_density(rng, 3, rank);
      CHECK(state_rank(sl_action(random_sl(rng, 3), state)) == rank);
    }
  }

  SUBCASE("singular elements are rejected") {
    Matrix singular = Matrix::Zero(3, 3);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(sl_action(singular, rho), std::invalid_argument);
  }
}

TEST_CASE("extremal states are the rank-one projectors") {
  RandomEngine rng(13);
  CHECK(is_extremal(pure_projector(random_pure_point(rng, 3))));
  CHECK_FALSE(is_extremal(QuantumState{Matrix(0.5 * identity(2))}));

  Matrix nearly_pure = Matrix::Zero(2, 2);
  nearly_pure(0, 0) = 0.99;
  nearly_pure(1, 1) = 0.01;
  const QuantumState mixed{nearly_pure};
  CHECK_FALSE(is_extremal(mixed));
  CHECK(mixed.purity() == doctest::Approx(0.9802));
}

TEST_CASE("convex combinations") {
  Matrix zero = Matrix::Zero(2, 2), one = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  one(1, 1) = 1.0;
  const QuantumState mix =
      convex_combine({QuantumState{zero}, QuantumState{one}}, {0.5, 0.5});
  CHECK(max_abs(mix.matrix() - 0.5 * identity(2)) < 1e-15);

  const QuantumState single = convex_combine({QuantumState{zero}}, {1.0});
  CHECK(max_abs(single.matrix() - zero) == 0.0);

  Vector plus(2);
  plus << 1.0, 1.0;
  const QuantumState blend = convex_combine(
      {QuantumState{zero}, pure_projector(ProjectivePoint(plus))}, {0.3, 0.7});
  const BlochVector x = bloch_from_state(blend);
  CHECK(x.x[0] == doctest::Approx(0.7));
  CHECK(x.x[1] == doctest::Approx(0.0));
  CHECK(x.x[2] == doctest::Approx(0.3));

  CHECK_THROWS_AS(convex_combine({QuantumState{zero}}, {0.8}),
                  std::invalid_argument);
  CHECK_THROWS_AS(convex_combine({QuantumState{zero}, QuantumState{one}},
                                 {1.5, -0.5}),
                  std::invalid_argument);
}

TEST_CASE("trace-one ambient points need no positivity") {
  Matrix indefinite = Matrix::Zero(2, 2);
  indefinite(0, 0) = 1.5;
  indefinite(1, 1) = -0.5;
  CHECK_NOTHROW(TraceOnePoint{indefinite});
  CHECK_THROWS_AS(TraceOnePoint{Matrix(2.0 * identity(2))}, std::invalid_argument);
  Matrix skew(2, 2);
  skew << 1, 1, -1, 0;
  CHECK_THROWS_AS(TraceOnePoint{skew}, std::invalid_argument);
}

TEST_CASE("state expectation stays inside the spectrum") {
  RandomEngine rng(17);
  HaarSampler sampler(99);
  const QuantumState rho = random_density(rng, 3, 2);
  const EigenSystem es = eig_hermitian(HermitianOperator{rho.matrix()});
  for (int k = 0; k < 100; ++k) {
    const double value = state_expectation(rho, sampler.sample(3));
    CHECK(value >= es.eigenvalues[2] - 1e-12);
    CHECK(value <= es.eigenvalues[0] + 1e-12);
  }
}
