#include "geomq/verify.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "geomq/bloch.hpp"
#include "geomq/composition.hpp"
#include "geomq/dynamics.hpp"
#include "geomq/measurement.hpp"
#include "geomq/random.hpp"
#include "geomq/scenario.hpp"

namespace geomq {

namespace {

using FieldMap = std::function<Matrix(const Matrix&)>;

CheckResult at_most(std::string name, double residual, double tol,
                    std::string note = {}) {
  return CheckResult{std::move(name), residual, tol, residual <= tol, false,
                     std::move(note)};
}

CheckResult at_least(std::string name, double residual, double threshold,
                     std::string note = {}) {
  return CheckResult{std::move(name), residual, threshold,
                     residual > threshold, true, std::move(note)};
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Centered finite-difference Lie bracket of two matrix-valued fields in the
// ambient Hermitian space, with one step of Richardson refinement.
Matrix lie_bracket_fd(const FieldMap& v, const FieldMap& w, const Matrix& rho,
                      double h) {
  auto bracket_at = [&](double step) {
    const Matrix v0 = v(rho);
    const Matrix w0 = w(rho);
    const Matrix dw = (w(rho + step * v0) - w(rho - step * v0)) / (2.0 * step);
    const Matrix dv = (v(rho + step * w0) - v(rho - step * w0)) / (2.0 * step);
    return Matrix(dw - dv);
  };
  return (4.0 * bracket_at(0.5 * h) - bracket_at(h)) / 3.0;
}

// ---------------------------------------------------------------------------
// algebra suite
// ---------------------------------------------------------------------------

void operator_core_checks(std::vector<CheckResult>& out, RandomEngine& rng) {
  double comm_resid = 0.0, jordan_resid = 0.0, product_resid = 0.0;
  double tensor_resid = 0.0, eig_resid = 0.0;
  for (int dim : {2, 3, 4, 8}) {
    for (int rep = 0; rep < 5; ++rep) {
      const HermitianOperator a = random_hermitian(rng, dim);
      const HermitianOperator b = random_hermitian(rng, dim);
      const Matrix comm = commutator(a.matrix(), b.matrix());
      const Matrix jord = jordan_matrix(a.matrix(), b.matrix());
      comm_resid = std::max(comm_resid, max_abs(comm + comm.adjoint().eval()));
      jordan_resid = std::max(jordan_resid, max_abs(jord - jord.adjoint().eval()));
      product_resid = std::max(
          product_resid, max_abs(a.matrix() * b.matrix() - jord - 0.5 * comm));
      tensor_resid = std::max(
          tensor_resid,
          std::abs(tensor_product(a.matrix(), b.matrix()).trace() -
                   a.matrix().trace() * b.matrix().trace()));
      const EigenSystem es = eig_hermitian(a);
      eig_resid = std::max(eig_resid, max_abs(eig_reconstruct(es) - a.matrix()));
      eig_resid = std::max(
          eig_resid, max_abs(es.eigenvectors.adjoint() * es.eigenvectors -
                             Matrix::Identity(dim, dim)));
    }
  }
  out.push_back(at_most("commutator_antihermitian", comm_resid, 1e-12));
  out.push_back(at_most("jordan_hermitian", jordan_resid, 1e-12));
  out.push_back(at_most("product_reconstruction", product_resid, 1e-12));
  out.push_back(at_most("tensor_trace_multiplicative", tensor_resid, 1e-10));
  out.push_back(at_most("eig_reconstruction_orthonormal", eig_resid, 1e-10));

  double trace_resid = 0.0, positivity_resid = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const QuantumState rho = random_density(rng, 6, 1 + rep % 6);
    const QuantumState rho_a = partial_trace(rho, 2, 3, Subsystem::A);
    const QuantumState rho_b = partial_trace(rho, 2, 3, Subsystem::B);
    trace_resid = std::max(
        trace_resid, std::abs(rho_a.matrix().trace().real() - 1.0));
    trace_resid = std::max(
        trace_resid, std::abs(rho_b.matrix().trace().real() - 1.0));
    for (const QuantumState* part : {&rho_a, &rho_b}) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(part->matrix(),
                                                   Eigen::EigenvaluesOnly);
      positivity_resid =
          std::max(positivity_resid, -solver.eigenvalues().minCoeff());
    }
  }
  out.push_back(at_most("partial_trace_preserves_trace", trace_resid, 1e-12));
  out.push_back(at_most("partial_trace_positivity", positivity_resid, 1e-10));
}

void bracket_checks(std::vector<CheckResult>& out, RandomEngine& rng,
                    const VerifyOptions& opts) {
  HaarSampler sampler(opts.seed ^ 0x5eedULL);
  double gen_resid = 0.0, point_resid = 0.0, jacobi_resid = 0.0;
  double jordan_id_resid = 0.0, assoc_resid = 0.0;
  double paper_scale_resid = 0.0;
  for (int dim : {2, 3, 4}) {
    for (int rep = 0; rep < 6; ++rep) {
      const HermitianOperator a = random_hermitian(rng, dim);
      const HermitianOperator b = random_hermitian(rng, dim);
      const HermitianOperator c = random_hermitian(rng, dim);
      const ExpectationFunction fa(a), fb(b), fc(c);

      const Matrix product = a.matrix() * b.matrix();
      const ExpectationFunction poisson_internal =
          poisson_bracket(fa, fb, BracketConvention::internal);
      const ExpectationFunction jordan = jordan_bracket(fa, fb);
      const Matrix recomposed = jordan.generator().matrix() +
                                kImag * poisson_internal.generator().matrix();
      if (opts.convention == BracketConvention::internal) {
        gen_resid = std::max(gen_resid, max_abs(recomposed - product));
      } else {
        // The literal i[a,b] generator misses F_{ab} by exactly (3/2)[a,b].
        const ExpectationFunction poisson_paper =
            poisson_bracket(fa, fb, BracketConvention::paper);
        const Matrix paper_recomposed =
            jordan.generator().matrix() + kImag * poisson_paper.generator().matrix();
        const double deviation = (paper_recomposed - product).norm();
        const double predicted =
            1.5 * commutator(a.matrix(), b.matrix()).norm();
        paper_scale_resid =
            std::max(paper_scale_resid, std::abs(deviation - predicted));
        const Matrix rescaled = poisson_paper.generator().matrix() +
                                2.0 * poisson_internal.generator().matrix();
        paper_scale_resid = std::max(paper_scale_resid, max_abs(rescaled));
      }

      for (int k = 0; k < 4; ++k) {
        const ProjectivePoint pt = sampler.sample(dim);
        const ComplexObservableFunction star =
            star_product(ComplexObservableFunction(fa),
                         ComplexObservableFunction(fb));
        const Complex lhs = star(pt);
        const Complex rhs = jordan(pt) + kImag * poisson_internal(pt);
        point_resid = std::max(point_resid, std::abs(lhs - rhs));
      }

      // Jacobi and Jordan identities at the generator level.
      auto pb = [](const ExpectationFunction& x, const ExpectationFunction& y) {
        return poisson_bracket(x, y, BracketConvention::internal);
      };
      const Matrix jacobi = pb(fa, pb(fb, fc)).generator().matrix() +
                            pb(fb, pb(fc, fa)).generator().matrix() +
                            pb(fc, pb(fa, fb)).generator().matrix();
      jacobi_resid = std::max(jacobi_resid, max_abs(jacobi));

      const ExpectationFunction a_sq = jordan_bracket(fa, fa);
      const Matrix jordan_lhs =
          jordan_bracket(jordan_bracket(fa, fb), a_sq).generator().matrix();
      const Matrix jordan_rhs =
          jordan_bracket(fa, jordan_bracket(fb, a_sq)).generator().matrix();
      jordan_id_resid = std::max(jordan_id_resid, max_abs(jordan_lhs - jordan_rhs));

      const ComplexObservableFunction ca{random_general(rng, dim)};
      const ComplexObservableFunction cb{random_general(rng, dim)};
      const ComplexObservableFunction cc{random_general(rng, dim)};
      assoc_resid = std::max(
          assoc_resid, max_abs(star_product(star_product(ca, cb), cc).generator() -
                               star_product(ca, star_product(cb, cc)).generator()));
    }
  }
  if (opts.convention == BracketConvention::internal) {
    out.push_back(at_most("star_bracket_generator_identity", gen_resid, 1e-12));
  }
  out.push_back(at_most("star_identity_pointwise", point_resid, 1e-10));
  out.push_back(at_most("poisson_jacobi", jacobi_resid, 1e-10));
  out.push_back(at_most("jordan_identity", jordan_id_resid, 1e-10));
  out.push_back(at_most("star_associativity", assoc_resid, 1e-10));
  if (opts.convention == BracketConvention::paper) {
    out.push_back(at_most("paper_convention_deviation", paper_scale_resid, 1e-10,
                          "i[a,b] generator = -2 x internal; star identity "
                          "misses F_{ab} by (3/2)||[a,b]|| as predicted"));
  }
}

void sl_relation_checks(std::vector<CheckResult>& out, RandomEngine& rng) {
  double resid = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const int dim = 2 + inst % 3;
    const Matrix a = random_hermitian(rng, dim).matrix();
    const Matrix b = random_hermitian(rng, dim).matrix();
    const Matrix rho = pure_projector(random_pure_point(rng, dim)).matrix();
    const Matrix c_ab = -kImag * commutator(a, b);  // Hermitian

    const FieldMap xa = [&](const Matrix& r) { return hamiltonian_field_ambient(a, r); };
    const FieldMap xb = [&](const Matrix& r) { return hamiltonian_field_ambient(b, r); };
    const FieldMap ya = [&](const Matrix& r) { return gradient_field_ambient(a, r); };
    const FieldMap yb = [&](const Matrix& r) { return gradient_field_ambient(b, r); };

    const double h = 1e-5;
    resid = std::max(resid,
                     max_abs(lie_bracket_fd(xa, xb, rho, h) +
                             hamiltonian_field_ambient(c_ab, rho)));
    resid = std::max(resid,
                     max_abs(lie_bracket_fd(xa, yb, rho, h) +
                             gradient_field_ambient(c_ab, rho)));
    resid = std::max(resid,
                     max_abs(lie_bracket_fd(ya, yb, rho, h) -
                             hamiltonian_field_ambient(c_ab, rho)));
  }
  out.push_back(at_most("sl_commutation_relations_fd", resid, 1e-8));
}

void bracket_geometry_checks(std::vector<CheckResult>& out, RandomEngine& rng,
                             std::uint64_t seed) {
  HaarSampler sampler(seed ^ 0xfeedULL);
  double omega_resid = 0.0, metric_resid = 0.0;
  for (int dim : {2, 3, 4}) {
    for (int rep = 0; rep < 6; ++rep) {
      const HermitianOperator a = random_hermitian(rng, dim);
      const HermitianOperator b = random_hermitian(rng, dim);
      const ExpectationFunction fa(a), fb(b);
      const ProjectivePoint pt = sampler.sample(dim);
      const Vector& psi = pt.representative();

      // Horizontal lifts of the Hamiltonian and gradient fields at pt.
      auto centered = [&](const Matrix& m) {
        return Vector(m * psi - psi * psi.dot(m * psi));
      };
      const TangentVector x_a(pt, Vector(-kImag * centered(a.matrix())));
      const TangentVector x_b(pt, Vector(-kImag * centered(b.matrix())));
      const TangentVector y_a(pt, centered(a.matrix()));
      const TangentVector y_b(pt, centered(b.matrix()));

      const double omega = fs_symplectic(x_a, x_b);
      const double poisson_value = poisson_bracket(fa, fb)(pt);
      omega_resid = std::max(omega_resid, std::abs(omega - poisson_value));

      const double metric = fs_metric(y_a, y_b);
      const double covariance = symmetric_bracket_R(fa, fb)(pt);
      metric_resid = std::max(metric_resid, std::abs(metric - covariance));
    }
  }
  out.push_back(at_most("poisson_equals_omega_of_fields", omega_resid, 1e-8));
  out.push_back(at_most("symmetric_bracket_equals_metric", metric_resid, 1e-8));
}

void killing_checks(std::vector<CheckResult>& out, RandomEngine& rng,
                    std::uint64_t seed) {
  HaarSampler sampler(seed ^ 0x1c111ULL);
  double resid = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const int dim = 2 + inst % 3;
    const HermitianOperator a = random_hermitian(rng, dim);
    const ProjectivePoint pt = sampler.sample(dim);
    const TangentVector v = random_horizontal_tangent(rng, pt);
    const TangentVector w = random_horizontal_tangent(rng, pt);
    resid = std::max(resid, std::abs(killing_residual(a, pt, v, w, 1e-4)));
  }
  out.push_back(at_most("killing_condition_hamiltonian", resid, 1e-6));

  // Constructed non-critical instance: transporting along the gradient flow
  // of sigma_3 stretches the metric at first order.
  const HermitianOperator sz{pauli(3)};
  Vector psi(2), tangent(2);
  psi << std::cos(M_PI / 6.0), std::sin(M_PI / 6.0);
  tangent << -std::sin(M_PI / 6.0), std::cos(M_PI / 6.0);
  const ProjectivePoint pt(psi);
  const TangentVector v(pt, tangent);
  const double control = std::abs(gradient_killing_residual(sz, pt, v, v, 1e-4));
  out.push_back(at_least("killing_negative_control_gradient_flow", control, 0.1));
}

void observable_range_checks(std::vector<CheckResult>& out, RandomEngine& rng,
                             std::uint64_t seed) {
  HaarSampler sampler(seed ^ 0x4a9eULL);
  const HermitianOperator a = random_hermitian(rng, 2);
  const ExpectationFunction fa(a);
  const EigenSystem es = eig_hermitian(a);
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k < 10000; ++k) {
    const double value = fa(sampler.sample(2));
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  const double bound_violation =
      std::max(es.eigenvalues[0] - hi, lo - es.eigenvalues[1]);
  const double overshoot =
      std::max(hi - es.eigenvalues[0], es.eigenvalues[1] - lo);
  out.push_back(at_most("expectation_range_attained", bound_violation, 0.05,
                        "extrema approached within 0.05, never exceeded"));
  out.push_back(at_most("expectation_range_bounds", overshoot, 1e-12));
}

void state_space_checks(std::vector<CheckResult>& out, RandomEngine& rng,
                        const VerifyOptions& opts) {
  const std::uint64_t seed = opts.seed;
  int rank_mismatches = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const int rank = 1 + inst % 4;
    const QuantumState rho = random_density(rng, 4, rank);
    const Matrix g = random_sl(rng, 4);
    const QuantumState moved = sl_action(g, rho);
    if (state_rank(moved, opts.rank_tolerance) != rank) ++rank_mismatches;
  }
  out.push_back(at_most("sl_action_rank_invariance",
                        static_cast<double>(rank_mismatches), 0.0));

  double group_resid = 0.0, unitary_resid = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const QuantumState rho = random_density(rng, 3, 1 + rep % 3);
    const Matrix g1 = random_sl(rng, 3);
    const Matrix g2 = random_sl(rng, 3);
    group_resid = std::max(
        group_resid, max_abs(sl_action(g1, sl_action(g2, rho)).matrix() -
                             sl_action(Matrix(g1 * g2), rho).matrix()));
    const Matrix u = random_unitary(rng, 3);
    unitary_resid = std::max(
        unitary_resid, max_abs(sl_action(u, rho).matrix() -
                               u * rho.matrix() * u.adjoint()));
  }
  out.push_back(at_most("sl_action_group_property", group_resid, 1e-10));
  out.push_back(at_most("sl_action_unitary_reduction", unitary_resid, 1e-10));

  int extremal_mismatches = 0;
  for (int rep = 0; rep < 12; ++rep) {
    const int rank = 1 + rep % 3;
    const QuantumState rho = random_density(rng, 3, rank);
    const bool extremal = is_extremal(rho);
    const bool pure_by_rank = state_rank(rho) == 1;
    const bool pure_by_purity = std::abs(rho.purity() - 1.0) <= 1e-8;
    if (extremal != pure_by_rank || extremal != pure_by_purity ||
        extremal != (rank == 1)) {
      ++extremal_mismatches;
    }
  }
  out.push_back(at_most("extremal_purity_rank_consistency",
                        static_cast<double>(extremal_mismatches), 0.0));

  HaarSampler sampler(seed ^ 0x905ULL);
  double negativity = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const QuantumState rho = random_density(rng, 2, 1 + rep % 2);
    const QuantumState moved = sl_action(random_sl(rng, 2), rho);
    for (int k = 0; k < 200; ++k) {
      negativity = std::min(negativity,
                            state_expectation(moved, sampler.sample(2)));
    }
  }
  out.push_back(at_most("state_function_nonnegative", -negativity, 1e-12));
}

// ---------------------------------------------------------------------------
// geometry suite
// ---------------------------------------------------------------------------

void projective_checks(std::vector<CheckResult>& out, RandomEngine& rng,
                       std::uint64_t seed) {
  HaarSampler sampler(seed ^ 0x9e0ULL);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> scale(0.2, 5.0);

  double gauge_resid = 0.0, herm_resid = 0.0, compat_resid = 0.0;
  double jj_resid = 0.0, positivity_resid = 0.0;
  for (int dim : {2, 3, 4, 8}) {
    for (int rep = 0; rep < 5; ++rep) {
      const ProjectivePoint pt = sampler.sample(dim);

      // Gauge independence: rescale the representative before re-projecting.
      const Complex prefactor =
          scale(rng) * std::exp(kImag * angle(rng));
      const ProjectivePoint rescaled(Vector(prefactor * pt.representative()));
      gauge_resid = std::max(gauge_resid,
                             std::abs(transition_probability(pt, rescaled) - 1.0));

      const TangentVector v = random_horizontal_tangent(rng, pt);
      const TangentVector w = random_horizontal_tangent(rng, pt);
      const Complex hvw = pullback_tensor(v, w);
      const Complex hwv = pullback_tensor(w, v);
      herm_resid = std::max(herm_resid, std::abs(hvw - std::conj(hwv)));
      positivity_resid =
          std::max(positivity_resid, -pullback_tensor(v, v).real());
      positivity_resid =
          std::max(positivity_resid, std::abs(pullback_tensor(v, v).imag()));

      const TangentVector jw = apply_J(w);
      compat_resid = std::max(compat_resid,
                              std::abs(fs_metric(v, jw) - fs_symplectic(v, w)));
      jj_resid = std::max(
          jj_resid,
          (apply_J(apply_J(v)).horizontal() + v.horizontal()).norm());
    }
  }
  out.push_back(at_most("gauge_independence", gauge_resid, 1e-10));
  out.push_back(at_most("pullback_hermitian_symmetry", herm_resid, 1e-12));
  out.push_back(at_most("pullback_positive_diagonal", positivity_resid, 1e-12));
  out.push_back(at_most("kahler_compatibility", compat_resid, 1e-10));
  out.push_back(at_most("J_squares_to_minus_identity", jj_resid, 1e-12));
}

void chart_checks(std::vector<CheckResult>& out, RandomEngine& rng) {
  double assembly_resid = 0.0;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int dim : {2, 3, 4}) {
    for (int rep = 0; rep < 7; ++rep) {
      RealVector p(dim);
      do {
        for (int j = 0; j < dim; ++j) p[j] = 0.05 + uniform(rng);
        p /= p.sum();
      } while (p.minCoeff() < 0.04);
      RealVector phi(dim), dp(dim), dphi(dim);
      for (int j = 0; j < dim; ++j) {
        phi[j] = 2.0 * M_PI * uniform(rng);
        dp[j] = uniform(rng) - 0.5;
        dphi[j] = uniform(rng) - 0.5;
      }
      dp.array() -= dp.mean();

      const AmplitudeChart chart(Matrix(Matrix::Identity(dim, dim)), p, phi);
      const TangentVector t = chart.tangent(dp, dphi);
      const double quadratic = pullback_tensor(t, t).real();

      const ChartMetricBlocks blocks = amplitude_chart_metric(p);
      const double assembled = dp.dot(blocks.fisher_block * dp) +
                               dphi.dot(blocks.phase_block * dphi);
      assembly_resid = std::max(assembly_resid, std::abs(quadratic - assembled));
    }
  }
  out.push_back(at_most("fisher_rao_chart_assembly", assembly_resid, 1e-8));

  const RealVector half = RealVector::Constant(2, 0.5);
  const ChartMetricBlocks blocks = amplitude_chart_metric(half);
  RealMatrix expected(2, 2);
  expected << 0.25, -0.25, -0.25, 0.25;
  out.push_back(at_most("phase_block_half_half",
                        (blocks.phase_block - expected).cwiseAbs().maxCoeff(),
                        1e-12));
  out.push_back(at_most("fisher_block_half_half",
                        (blocks.fisher_block - expected).cwiseAbs().maxCoeff(),
                        1e-12));

  RealVector p3(3);
  p3 << 0.5, 0.3, 0.2;
  const ChartMetricBlocks b3 = amplitude_chart_metric(p3);
  const RealVector ones = RealVector::Ones(3);
  out.push_back(at_most("phase_block_constant_kernel",
                        (b3.phase_block * ones).cwiseAbs().maxCoeff(), 1e-12,
                        "global phase shifts are unphysical"));
}

void haar_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
  HaarSampler sampler(seed ^ 0xb10cULL);
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    const QuantumState rho = pure_projector(sampler.sample(2));
    mean += bloch_from_state(rho).x;
  }
  mean /= n;
  out.push_back(at_most("haar_bloch_uniformity", mean.norm(), 0.02));
}

void qubit_checks(std::vector<CheckResult>& out, RandomEngine& rng) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  auto random_ball_point = [&] {
    Eigen::Vector3d x;
    do {
      x = Eigen::Vector3d(uniform(rng), uniform(rng), uniform(rng));
    } while (x.norm() >= 0.98);
    return BlochVector(x);
  };

  double oracle_resid = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const HermitianOperator a = random_hermitian(rng, 2);
    const HermitianOperator b = random_hermitian(rng, 2);
    const BlochVector x = random_ball_point();
    const QuantumState rho = state_from_bloch(x);

    const AffineFunction fa = expectation_affine(a);
    const AffineFunction fb = expectation_affine(b);
    const ExpectationFunction ea{a}, eb{b};

    // Operator-level brackets evaluated at rho(x) = (1 + x.sigma)/2 via
    // Tr(rho gen); valid for mixed x as well.
    const Matrix poisson_gen = poisson_bracket(ea, eb).generator().matrix();
    const double op_poisson = (rho.matrix() * poisson_gen).trace().real();
    oracle_resid = std::max(oracle_resid,
                            std::abs(lambda_eval(x, fa, fb) - op_poisson));

    const Matrix jordan_gen = jordan_bracket(ea, eb).generator().matrix();
    const double op_jordan = (rho.matrix() * jordan_gen).trace().real();
    const double op_ea = (rho.matrix() * a.matrix()).trace().real();
    const double op_eb = (rho.matrix() * b.matrix()).trace().real();
    oracle_resid = std::max(oracle_resid, std::abs(r_eval(x, fa, fb) -
                                                   (op_jordan - op_ea * op_eb)));
  }
  out.push_back(at_most("qubit_bivector_operator_oracle", oracle_resid, 1e-10));

  double tangency_resid = 0.0, boundary_resid = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const HermitianOperator a = random_hermitian(rng, 2);
    const AffineFunction fa = expectation_affine(a);
    const BlochVector x = random_ball_point();
    const QubitFields fields = bloch_vector_fields(fa, x);
    tangency_resid = std::max(tangency_resid, std::abs(x.x.dot(fields.hamiltonian)));

    Eigen::Vector3d sphere = Eigen::Vector3d(uniform(rng), uniform(rng), uniform(rng));
    sphere.normalize();
    const BlochVector xb(sphere);
    const QubitFields boundary = bloch_vector_fields(fa, xb);
    boundary_resid = std::max(boundary_resid, std::abs(xb.x.dot(boundary.gradient)));
    boundary_resid = std::max(boundary_resid, std::abs(xb.x.dot(boundary.hamiltonian)));

    // Radial pairing of Lambda vanishes: d||x||^2 has gradient 2x.
    const AffineFunction radial{0.0, 2.0 * x.x};
    tangency_resid = std::max(tangency_resid, std::abs(lambda_eval(x, radial, fa)));
  }
  out.push_back(at_most("qubit_hamiltonian_tangency", tangency_resid, 1e-10));
  out.push_back(at_most("qubit_boundary_tangency", boundary_resid, 1e-10));

  // Spherical forms against the Cartesian tensors under the chart Jacobian.
  double jacobian_resid = 0.0;
  std::uniform_real_distribution<double> u01(0.05, 0.95);
  for (int rep = 0; rep < 20; ++rep) {
    const double r = u01(rng);
    const double theta = 0.2 + (M_PI - 0.4) * u01(rng);
    const double phi = 2.0 * M_PI * u01(rng);
    const Eigen::Vector3d x(r * std::sin(theta) * std::cos(phi),
                            r * std::sin(theta) * std::sin(phi),
                            r * std::cos(theta));
    Eigen::Matrix3d jac;  // rows: grad r, grad theta, grad phi
    jac.row(0) = x.transpose() / r;
    jac.row(1) = Eigen::Vector3d(std::cos(theta) * std::cos(phi),
                                 std::cos(theta) * std::sin(phi),
                                 -std::sin(theta))
                     .transpose() /
                 r;
    jac.row(2) = Eigen::Vector3d(-std::sin(phi), std::cos(phi), 0.0).transpose() /
                 (r * std::sin(theta));

    const Eigen::Matrix3d r_cart = Eigen::Matrix3d::Identity() - x * x.transpose();
    Eigen::Matrix3d lambda_cart;
    lambda_cart << 0, x[2], -x[1], -x[2], 0, x[0], x[1], -x[0], 0;

    const Eigen::Matrix3d r_sph = jac * r_cart * jac.transpose();
    const Eigen::Matrix3d lambda_sph = jac * lambda_cart * jac.transpose();

    const SphericalTensors st = spherical_tensors(r, theta, phi);
    Eigen::Matrix3d r_expected = Eigen::Matrix3d::Zero();
    r_expected.diagonal() << st.r_rr, st.r_thth, st.r_phph;
    Eigen::Matrix3d lambda_expected = Eigen::Matrix3d::Zero();
    lambda_expected(1, 2) = st.lambda_thph;
    lambda_expected(2, 1) = -st.lambda_thph;

    jacobian_resid = std::max(jacobian_resid,
                              (r_sph - r_expected).cwiseAbs().maxCoeff());
    jacobian_resid = std::max(jacobian_resid,
                              (lambda_sph - lambda_expected).cwiseAbs().maxCoeff());
  }
  out.push_back(at_most("spherical_cartesian_jacobian", jacobian_resid, 1e-8));

  const SphericalTensors boundary = spherical_tensors(1.0, 0.7, 0.3);
  out.push_back(at_most("spherical_radial_degeneracy", std::abs(boundary.r_rr),
                        1e-12, "R(dr, .) = 0 on the pure-state sphere"));

  // Numerical span of {X_e, Y_e} and their pairwise brackets: the real Lie
  // algebra they generate is six-dimensional (sl(2, C)).
  std::vector<std::pair<bool, Eigen::Vector3d>> generators;
  for (int j = 0; j < 3; ++j) {
    generators.push_back({true, Eigen::Vector3d::Unit(j)});
    generators.push_back({false, Eigen::Vector3d::Unit(j)});
  }
  auto eval_field = [](bool hamiltonian, const Eigen::Vector3d& c,
                       const Eigen::Vector3d& x) {
    return hamiltonian ? Eigen::Vector3d(c.cross(x))
                       : Eigen::Vector3d(c - c.dot(x) * x);
  };
  auto field_jacobian = [](bool hamiltonian, const Eigen::Vector3d& c,
                           const Eigen::Vector3d& x) {
    Eigen::Matrix3d jac;
    if (hamiltonian) {
      jac << 0, -c[2], c[1], c[2], 0, -c[0], -c[1], c[0], 0;
    } else {
      jac = -(x * c.transpose() + c.dot(x) * Eigen::Matrix3d::Identity());
    }
    return jac;
  };
  std::vector<Eigen::Vector3d> probes;
  for (int k = 0; k < 5; ++k) {
    probes.push_back(0.7 * random_ball_point().x);
  }
  std::vector<Eigen::VectorXd> fingerprints;
  auto fingerprint_of = [&](auto&& field) {
    Eigen::VectorXd fp(3 * probes.size());
    for (std::size_t k = 0; k < probes.size(); ++k) {
      fp.segment<3>(3 * static_cast<Eigen::Index>(k)) = field(probes[k]);
    }
    return fp;
  };
  for (const auto& [ham, c] : generators) {
    fingerprints.push_back(fingerprint_of(
        [&](const Eigen::Vector3d& x) { return eval_field(ham, c, x); }));
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      fingerprints.push_back(fingerprint_of([&](const Eigen::Vector3d& x) {
        const auto& [hi, ci] = generators[i];
        const auto& [hj, cj] = generators[j];
        return Eigen::Vector3d(field_jacobian(hj, cj, x) * eval_field(hi, ci, x) -
                               field_jacobian(hi, ci, x) * eval_field(hj, cj, x));
      }));
    }
  }
  Eigen::MatrixXd span(fingerprints.front().size(),
                       static_cast<Eigen::Index>(fingerprints.size()));
  for (std::size_t k = 0; k < fingerprints.size(); ++k) {
    span.col(static_cast<Eigen::Index>(k)) = fingerprints[k];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(span);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] > 1e-8 * sv[0]) ++rank;
  }
  out.push_back(at_most("qubit_field_algebra_dimension",
                        std::abs(static_cast<double>(rank) - 6.0), 0.0,
                        "span of generators and pairwise brackets"));
}

void measurement_checks(std::vector<CheckResult>& out, RandomEngine& rng,
                        std::uint64_t seed) {
  HaarSampler sampler(seed ^ 0x6e05ULL);
  double axiom_resid = 0.0, born_resid = 0.0, covariance_resid = 0.0;
  double reconstruct_resid = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const int dim = 2 + inst % 3;
    const HermitianOperator a = random_hermitian(rng, dim);
    const FiniteGPOVMeasure m = gpov_from_observable(a);
    const ProjectivePoint pt = sampler.sample(dim);

    Matrix reassembled = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < m.outcomes().size(); ++k) {
      reassembled += m.outcomes()[k] * m.effects()[k].matrix();
    }
    reconstruct_resid = std::max(reconstruct_resid,
                                 max_abs(reassembled - a.matrix()));

    std::vector<int> full(m.outcomes().size());
    for (std::size_t k = 0; k < full.size(); ++k) full[k] = static_cast<int>(k);
    const double p_full = probability(m, full, pt);
    const double p_empty = probability(m, {}, pt);
    axiom_resid = std::max(axiom_resid, std::abs(p_full - 1.0));
    axiom_resid = std::max(axiom_resid, std::abs(p_empty));
    double additive = 0.0;
    for (int k : full) {
      const double pk = probability(m, {k}, pt);
      if (pk < -1e-12 || pk > p_full + 1e-12) axiom_resid = std::max(axiom_resid, 1.0);
      additive += pk;
    }
    axiom_resid = std::max(axiom_resid, std::abs(additive - p_full));

    // Dirac-Schroedinger consistency: Born rule through the projector.
    const QuantumState rho = pure_projector(pt);
    for (int k : full) {
      const double trace_value =
          (rho.matrix() * m.effects()[static_cast<std::size_t>(k)].matrix())
              .trace()
              .real();
      born_resid = std::max(born_resid,
                            std::abs(probability(m, {k}, pt) - trace_value));
    }

    // Unitary covariance.
    const Matrix u = random_unitary(rng, dim);
    const HermitianOperator rotated(Matrix(u * a.matrix() * u.adjoint()));
    const FiniteGPOVMeasure m_rot = gpov_from_observable(rotated);
    const ProjectivePoint pt_rot(Vector(u * pt.representative()));
    if (m_rot.outcomes().size() == m.outcomes().size()) {
      for (int k : full) {
        covariance_resid = std::max(
            covariance_resid, std::abs(probability(m, {k}, pt) -
                                       probability(m_rot, {k}, pt_rot)));
      }
    }
  }
  out.push_back(at_most("gpov_axioms", axiom_resid, 1e-10));
  out.push_back(at_most("gpov_reconstruction", reconstruct_resid, 1e-10));
  out.push_back(at_most("born_rule_consistency", born_resid, 1e-12));
  out.push_back(at_most("gpov_unitary_covariance", covariance_resid, 1e-10));

  // Pairing integral: linearity within Monte-Carlo error and the identity
  // pairing value together with the flagged normalization discrepancy.
  const QuantumState rho = random_density(rng, 2, 2);
  const HermitianOperator a = random_hermitian(rng, 2);
  const HermitianOperator b = random_hermitian(rng, 2);
  const ExpectationFunction fa(a), fb(b);
  Matrix sum_gen = a.matrix() + b.matrix();
  const ExpectationFunction fsum{HermitianOperator(std::move(sum_gen))};
  const long n = 40000;
  const PairingEstimate ea = pairing_integral(rho, fa, n, seed + 1);
  const PairingEstimate eb_est = pairing_integral(rho, fb, n, seed + 2);
  const PairingEstimate esum = pairing_integral(rho, fsum, n, seed + 3);
  const double combined = std::sqrt(ea.std_error * ea.std_error +
                                    eb_est.std_error * eb_est.std_error +
                                    esum.std_error * esum.std_error);
  out.push_back(at_most("pairing_linearity",
                        std::abs(esum.estimate - ea.estimate - eb_est.estimate),
                        3.0 * combined));

  const ExpectationFunction identity_fn{HermitianOperator(Matrix(identity(2)))};
  const PairingEstimate id_est = pairing_integral(rho, identity_fn, 100000, seed + 4);
  std::ostringstream note;
  note << "measured " << id_est.estimate << " +- " << id_est.std_error
       << "; invariant-measure value is Tr(rho)/n = 0.5, deviation from the "
          "normalization claim of 1 is "
       << std::abs(id_est.estimate - 1.0);
  out.push_back(at_most("pairing_identity_normalization",
                        std::abs(id_est.estimate - 0.5),
                        3.0 * id_est.std_error, note.str()));
}

// ---------------------------------------------------------------------------
// dynamics suite
// ---------------------------------------------------------------------------

LindbladGenerator random_generator(RandomEngine& rng, int dim, int n_ops) {
  HermitianOperator h = random_hermitian(rng, dim);
  std::vector<Matrix> v;
  for (int k = 0; k < n_ops; ++k) v.push_back(random_general(rng, dim, 0.5));
  return LindbladGenerator(std::move(h), std::move(v));
}

void dynamics_checks(std::vector<CheckResult>& out, RandomEngine& rng) {
  double herm_resid = 0.0, trace_resid = 0.0, split_resid = 0.0;
  double split_trace_resid = 0.0, cancel_resid = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const int dim = 2 + inst % 3;
    const LindbladGenerator gen = random_generator(rng, dim, 1 + inst % 2);
    const QuantumState rho = random_density(rng, dim, 1 + inst % dim);
    const Matrix l = gkls_apply(gen, rho);
    herm_resid = std::max(herm_resid, max_abs(l - l.adjoint().eval()));
    trace_resid = std::max(trace_resid, std::abs(l.trace()));
    const GklsSplit split = gkls_split(gen, rho);
    split_resid = std::max(
        split_resid, max_abs(split.hamiltonian + split.gradient + split.kraus - l));
    split_trace_resid = std::max(
        split_trace_resid,
        std::abs(split.gradient.trace() + split.kraus.trace()));
    cancel_resid = std::max(cancel_resid, cancellation_check(gen, rho));
  }
  out.push_back(at_most("gkls_hermitian", herm_resid, 1e-12));
  out.push_back(at_most("gkls_traceless", trace_resid, 1e-12));
  out.push_back(at_most("gkls_split_sum", split_resid, 1e-12));
  out.push_back(at_most("gkls_split_trace_balance", split_trace_resid, 1e-12));
  out.push_back(at_most("gkls_nonlinearity_cancellation", cancel_resid, 1e-12));

  // Complete-positivity surrogate along trajectories up to t = 5.
  double min_eig = 0.0, drift = 0.0;
  for (int inst = 0; inst < 10; ++inst) {
    const int dim = 2 + inst % 3;
    const LindbladGenerator gen = random_generator(rng, dim, 1 + inst % 2);
    const QuantumState rho0 = random_density(rng, dim, dim);
    FlowConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 5.0;
    cfg.record_every = 25;
    const Trajectory traj = integrate(gen, rho0, cfg);
    for (const QuantumState& state : traj.states) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(state.matrix(),
                                                   Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, solver.eigenvalues().minCoeff());
      drift = std::max(drift, std::abs(state.matrix().trace().real() - 1.0));
    }
  }
  out.push_back(at_most("trajectory_positivity", -min_eig, 1e-6));
  out.push_back(at_most("trajectory_trace_drift", drift, 1e-8));

  // Linearity of the integrated flow: the operational content of the
  // cancellation claim.
  {
    const LindbladGenerator gen = random_generator(rng, 3, 2);
    const QuantumState rho1 = random_density(rng, 3, 2);
    const QuantumState rho2 = random_density(rng, 3, 3);
    const double alpha = 0.37;
    const QuantumState mix = convex_combine({rho1, rho2}, {alpha, 1.0 - alpha});
    FlowConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 1.0;
    cfg.record_every = 10;
    const Trajectory t1 = integrate(gen, rho1, cfg);
    const Trajectory t2 = integrate(gen, rho2, cfg);
    const Trajectory tm = integrate(gen, mix, cfg);
    double resid = 0.0;
    for (std::size_t k = 0; k < tm.states.size(); ++k) {
      resid = std::max(resid, max_abs(tm.states[k].matrix() -
                                      alpha * t1.states[k].matrix() -
                                      (1.0 - alpha) * t2.states[k].matrix()));
    }
    out.push_back(at_most("integrate_linearity", resid, 1e-8));
  }

  // Phase damping: purity monotone and the Bloch image of the generator.
  {
    const LindbladGenerator damping = phase_damping_generator(0.5);
    const QuantumState rho0 = state_from_bloch(BlochVector(0.8, 0.1, 0.3));
    FlowConfig cfg;
    cfg.dt = 0.005;
    cfg.t_final = 3.0;
    cfg.record_every = 20;
    const Trajectory traj = integrate(damping, rho0, cfg);
    double monotone_resid = 0.0;
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
      monotone_resid = std::max(
          monotone_resid, traj.states[k].purity() - traj.states[k - 1].purity());
    }
    out.push_back(at_most("phase_damping_purity_monotone", monotone_resid, 1e-12));

    double field_resid = 0.0;
    for (double gamma : {0.1, 0.5, 2.0}) {
      const LindbladGenerator gen = phase_damping_generator(gamma);
      const BlochVector x(0.4, -0.3, 0.6);
      const Matrix l = gkls_apply(gen, state_from_bloch(x));
      Eigen::Vector3d velocity;
      for (int j = 0; j < 3; ++j) {
        velocity[j] = (l * pauli(j + 1)).trace().real();
      }
      const Eigen::Vector3d expected(-2.0 * gamma * x.x[0],
                                     -2.0 * gamma * x.x[1], 0.0);
      field_resid = std::max(field_resid, (velocity - expected).norm());
      field_resid = std::max(
          field_resid,
          max_abs(l + gamma * (state_from_bloch(x).matrix() -
                               pauli(3) * state_from_bloch(x).matrix() * pauli(3))));
    }
    out.push_back(at_most("phase_damping_bloch_field", field_resid, 1e-12));
  }

  // Closed-system limit: RK4 with V = {} against the exact unitary flow.
  {
    const HermitianOperator h = random_hermitian(rng, 3);
    const ProjectivePoint psi0 = random_pure_point(rng, 3);
    const LindbladGenerator gen(h, {});
    FlowConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 1.0;
    cfg.record_every = 100;
    const Trajectory traj = integrate(gen, pure_projector(psi0), cfg);
    double resid = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const QuantumState exact =
          pure_projector(hamiltonian_flow_pure(h, psi0, traj.times[k]));
      resid = std::max(resid, max_abs(traj.states[k].matrix() - exact.matrix()));
    }
    out.push_back(at_most("closed_system_limit", resid, 1e-8));

    FlowConfig unitary_cfg = cfg;
    unitary_cfg.integrator = Integrator::exact_unitary;
    const Trajectory exact_traj = integrate(gen, pure_projector(psi0), unitary_cfg);
    double agreement = 0.0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      agreement = std::max(agreement, max_abs(traj.states[k].matrix() -
                                              exact_traj.states[k].matrix()));
    }
    out.push_back(at_most("rk4_vs_exact_unitary", agreement, 1e-8));
  }
}

// ---------------------------------------------------------------------------
// composition suite
// ---------------------------------------------------------------------------

void composition_checks(std::vector<CheckResult>& out, RandomEngine& rng) {
  const CompositeDimensions qubits = composite_dimension(2, 2);
  out.push_back(at_most("composite_dimension_two_qubits",
                        std::abs(qubits.projective_dim - 6.0) +
                            std::abs(qubits.separable_dim - 4.0),
                        0.0, "CP^3 is six-dimensional, S^2 x S^2 only four"));

  double functional_resid = 0.0, product_resid = 0.0, local_resid = 0.0;
  for (int rep = 0; rep < 8; ++rep) {
    const BipartiteSystem sys(2, 3);
    const QuantumState rho = random_density(rng, 6, 1 + rep % 4);
    const QuantumState rho_a = project_subsystem(rho, sys, Subsystem::A);
    // Functional identity over an operator basis of the kept factor.
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Matrix e = Matrix::Zero(2, 2);
        e(i, j) = 1.0;
        const Matrix basis_h = i == j ? e : Matrix(e + e.adjoint());
        const Matrix basis_k = i == j ? e : Matrix(kImag * (e - e.adjoint()));
        for (const Matrix* a : {&basis_h, &basis_k}) {
          const double lhs = (rho_a.matrix() * (*a)).trace().real();
          const double rhs =
              (rho.matrix() * tensor_product(*a, identity(3))).trace().real();
          functional_resid = std::max(functional_resid, std::abs(lhs - rhs));
        }
      }
    }

    const QuantumState part_a = random_density(rng, 2, 1 + rep % 2);
    const QuantumState part_b = random_density(rng, 3, 1 + rep % 3);
    const QuantumState product{
        tensor_product(part_a.matrix(), part_b.matrix())};
    product_resid = std::max(
        product_resid,
        max_abs(project_subsystem(product, sys, Subsystem::A).matrix() -
                part_a.matrix()));
    product_resid = std::max(
        product_resid,
        max_abs(project_subsystem(product, sys, Subsystem::B).matrix() -
                part_b.matrix()));
    product_resid = std::max(product_resid,
                             std::abs(entanglement_measure(product, sys, 2)));
    product_resid = std::max(product_resid,
                             std::abs(entanglement_measure(product, sys, 3)));

    const Matrix u = random_unitary(rng, 3);
    const QuantumState rotated = QuantumState(
        tensor_product(identity(2), u) * rho.matrix() *
        tensor_product(identity(2), u).adjoint());
    local_resid = std::max(
        local_resid, max_abs(project_subsystem(rotated, sys, Subsystem::A).matrix() -
                             rho_a.matrix()));
  }
  out.push_back(at_most("subsystem_functional_identity", functional_resid, 1e-10));
  out.push_back(at_most("product_state_projection", product_resid, 1e-10));
  out.push_back(at_most("local_unitary_commutation", local_resid, 1e-10));

  // Bell-state entanglement and the Frobenius identity for k = 2.
  Vector bell(4);
  bell << 1, 0, 0, 1;
  const QuantumState bell_state = pure_projector(ProjectivePoint(bell));
  const BipartiteSystem two_qubits(2, 2);
  const double k2 = entanglement_measure(bell_state, two_qubits, 2);
  out.push_back(at_most("bell_entanglement_k2", std::abs(k2 - 0.75), 1e-12));
  const QuantumState bell_a = project_subsystem(bell_state, two_qubits, Subsystem::A);
  const QuantumState bell_b = project_subsystem(bell_state, two_qubits, Subsystem::B);
  const Matrix diff = bell_state.matrix() -
                      tensor_product(bell_a.matrix(), bell_b.matrix());
  out.push_back(at_most("entanglement_k2_frobenius",
                        std::abs(k2 - diff.squaredNorm()), 1e-12));

  // Mixed-state emergence under the interacting Hamiltonian.
  {
    const HermitianOperator h_ab{tensor_product(pauli(1), pauli(1))};
    Vector ground(4);
    ground << 1, 0, 0, 0;
    const QuantumState rho0 = pure_projector(ProjectivePoint(ground));
    FlowConfig cfg;
    cfg.dt = M_PI / 64.0;
    cfg.t_final = M_PI / 4.0;
    const Trajectory traj = projected_evolution(h_ab, rho0, two_qubits, cfg);
    double min_purity = 1.0;
    for (const QuantumState& s : traj.states) {
      min_purity = std::min(min_purity, s.purity());
    }
    out.push_back(at_most("subsystem_purity_drop", min_purity, 0.5 + 1e-6,
                          "pure global state projects to a mixed subsystem"));

    // Trajectories depend on the discarded factor of the initial product.
    Vector plus(2);
    plus << 1, 1;
    const QuantumState alt0{tensor_product(
        pure_projector(ProjectivePoint(Vector(Vector::Unit(2, 0)))).matrix(),
        pure_projector(ProjectivePoint(plus)).matrix())};
    FlowConfig cfg2;
    cfg2.dt = 0.05;
    cfg2.t_final = 2.0;
    const Trajectory base = projected_evolution(h_ab, rho0, two_qubits, cfg2);
    const Trajectory alt = projected_evolution(h_ab, alt0, two_qubits, cfg2);
    double separation = 0.0;
    for (std::size_t k = 0; k < base.states.size(); ++k) {
      separation = std::max(separation, (base.states[k].matrix() -
                                         alt.states[k].matrix())
                                            .norm());
    }
    out.push_back(at_least("initial_condition_dependence", separation, 1e-3,
                           "same A-factor, different B-factor"));
  }

  // Non-interacting separable evolution keeps the subsystem pure.
  {
    const Matrix h = tensor_product(pauli(3), identity(2)) +
                     tensor_product(identity(2), pauli(1));
    const HermitianOperator h_ab{h};
    Vector plus(2);
    plus << 1, 1;
    const QuantumState rho0{tensor_product(
        pure_projector(ProjectivePoint(Vector(Vector::Unit(2, 0)))).matrix(),
        pure_projector(ProjectivePoint(plus)).matrix())};
    FlowConfig cfg;
    cfg.dt = 0.02;
    cfg.t_final = 2.0;
    cfg.record_every = 5;
    const Trajectory traj =
        projected_evolution(h_ab, rho0, BipartiteSystem(2, 2), cfg);
    double purity_resid = 0.0;
    for (const QuantumState& s : traj.states) {
      purity_resid = std::max(purity_resid, std::abs(s.purity() - 1.0));
    }
    out.push_back(at_most("noninteracting_purity_conserved", purity_resid, 1e-8));
  }
}

}  // namespace

int SuiteReport::failures() const {
  int n = 0;
  for (const CheckResult& c : checks) {
    if (!c.pass) ++n;
  }
  return n;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "geometry", "dynamics",
                                              "composition"};
  return names;
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& opts) {
  RandomEngine rng(opts.seed);
  SuiteReport report;
  report.suite = name;
  if (name == "algebra") {
    operator_core_checks(report.checks, rng);
    bracket_checks(report.checks, rng, opts);
    sl_relation_checks(report.checks, rng);
    bracket_geometry_checks(report.checks, rng, opts.seed);
    killing_checks(report.checks, rng, opts.seed);
    observable_range_checks(report.checks, rng, opts.seed);
    state_space_checks(report.checks, rng, opts);
  } else if (name == "geometry") {
    projective_checks(report.checks, rng, opts.seed);
    chart_checks(report.checks, rng);
    haar_checks(report.checks, opts.seed);
    qubit_checks(report.checks, rng);
    measurement_checks(report.checks, rng, opts.seed);
  } else if (name == "dynamics") {
    dynamics_checks(report.checks, rng);
  } else if (name == "composition") {
    composition_checks(report.checks, rng);
  } else {
    throw std::invalid_argument("unknown verify suite: " + name);
  }
  return report;
}

std::vector<SuiteReport> run_all_suites(const VerifyOptions& opts) {
  std::vector<SuiteReport> reports;
  for (const std::string& name : suite_names()) {
    reports.push_back(run_suite(name, opts));
  }
  return reports;
}

SuiteReport validate_fixture_file(const std::string& path,
                                  const VerifyOptions& opts) {
  SuiteReport report;
  report.suite = "fixture:" + path;
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open fixture file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& err) {
    throw ScenarioError("fixture parse failure: " + std::string(err.what()));
  }
  auto validate_item = [&](const nlohmann::json& item, const std::string& name,
                           bool as_state) {
    CheckResult check;
    check.name = name;
    check.tolerance = as_state ? kStateTol : kHermitianTol;
    try {
      const Matrix m = as_state ? state_matrix_from_json(item)
                                : observable_from_json(item);
      if (as_state) {
        QuantumState state(m);
        check.residual = std::abs(m.trace().real() - 1.0);
        (void)state;
      } else {
        HermitianOperator op(m);
        check.residual = max_abs(m - m.adjoint());
        (void)op;
      }
      check.pass = true;
    } catch (const std::exception& err) {
      check.pass = false;
      check.residual = std::numeric_limits<double>::infinity();
      check.note = err.what();
    }
    report.checks.push_back(std::move(check));
  };
  if (j.contains("states")) {
    int idx = 0;
    for (const auto& item : j.at("states")) {
      validate_item(item, "state_invariants[" + std::to_string(idx++) + "]", true);
    }
  }
  if (j.contains("observables")) {
    int idx = 0;
    for (const auto& item : j.at("observables")) {
      validate_item(item, "observable_invariants[" + std::to_string(idx++) + "]",
                    false);
    }
  }
  (void)opts;
  return report;
}

}  // namespace geomq
