#pragma once

#include <stdexcept>
#include <vector>

#include "geomq/states.hpp"

namespace geomq {

// Bracket normalization. The internal convention generates the Poisson
// bracket by [a,b]/(2i) and the Jordan bracket by (ab+ba)/2, which makes
// f_a * f_b = f_jordan + i f_poisson reproduce F_{ab} exactly and matches
// the qubit coordinate algebra {x_j, x_k} = eps_jkl x_l. The paper
// convention rescales the Poisson generator to i[a,b] (a factor -2) and is
// kept selectable for side-by-side comparison.
enum class BracketConvention { internal, paper };

/// Expectation-value function e_a([psi]) = <psi|a|psi> on unit representatives.
class ExpectationFunction {
 public:
  explicit ExpectationFunction(HermitianOperator generator)
      : generator_(std::move(generator)) {}

  const HermitianOperator& generator() const { return generator_; }
  int dim() const { return generator_.dim(); }

  double operator()(const ProjectivePoint& pt) const;

 private:
  HermitianOperator generator_;
};

/// Complex-valued observable function F_A = f_a1 + i f_a2 with general
/// generator A = a1 + i a2, a1, a2 Hermitian.
class ComplexObservableFunction {
 public:
  explicit ComplexObservableFunction(Matrix generator);
  explicit ComplexObservableFunction(const ExpectationFunction& f)
      : generator_(f.generator().matrix()) {}

  const Matrix& generator() const { return generator_; }
  int dim() const { return static_cast<int>(generator_.rows()); }

  Complex operator()(const ProjectivePoint& pt) const;

  HermitianOperator hermitian_part() const;       // (A + A^dagger)/2
  HermitianOperator antihermitian_part() const;   // (A - A^dagger)/(2i)

 private:
  Matrix generator_;
};

/// {f_a, f_b}, generated by [a,b]/(2i) (internal) or i[a,b] (paper).
ExpectationFunction poisson_bracket(
    const ExpectationFunction& fa, const ExpectationFunction& fb,
    BracketConvention convention = BracketConvention::internal);

/// <f_a, f_b>, generated by (ab+ba)/2.
ExpectationFunction jordan_bracket(const ExpectationFunction& fa,
                                   const ExpectationFunction& fb);

/// The symmetric bracket (f_a, f_b) = R(df_a, df_b): pointwise the
/// symmetrized covariance e_{(ab+ba)/2} - e_a e_b.
class SymmetricBracket {
 public:
  SymmetricBracket(ExpectationFunction fa, ExpectationFunction fb);

  double operator()(const ProjectivePoint& pt) const;

 private:
  ExpectationFunction fa_, fb_;
  ExpectationFunction jordan_;
};

inline SymmetricBracket symmetric_bracket_R(const ExpectationFunction& fa,
                                            const ExpectationFunction& fb) {
  return SymmetricBracket(fa, fb);
}

/// F_A * F_B = F_{AB} (associative star product of observable functions).
ComplexObservableFunction star_product(const ComplexObservableFunction& fa,
                                       const ComplexObservableFunction& fb);

// Vector fields on CP(H) realized as Hermitian traceless matrices at a
// rank-one rho; tangency shows up as T = rho T + T rho.

/// Hamiltonian vector field of e_a at a pure state: -i[a, rho].
Matrix hamiltonian_vf(const HermitianOperator& a, const QuantumState& rho);

/// Gradient vector field of e_a at a pure state: a rho + rho a - 2 Tr(a rho) rho.
Matrix gradient_vf(const HermitianOperator& a, const QuantumState& rho);

// Ambient extensions of the same fields, defined for any Hermitian argument.
// The finite-difference Lie brackets of the sl(H) realization differentiate
// these in the flat trace-one space.
Matrix hamiltonian_field_ambient(const Matrix& a, const Matrix& rho);
Matrix gradient_field_ambient(const Matrix& a, const Matrix& rho);

/// [e^{-i a t} psi].
ProjectivePoint hamiltonian_flow_pure(const HermitianOperator& a,
                                      const ProjectivePoint& pt, double t);

/// [e^{a t} psi] (normalized); converges to the top eigenray of a as t grows
/// whenever the overlap is nonzero.
ProjectivePoint gradient_flow_pure(const HermitianOperator& a,
                                   const ProjectivePoint& pt, double t);

struct CriticalPoint {
  ProjectivePoint point;
  double value;
};

/// Observable with non-isolated critical points (degenerate spectrum).
class NonGenericObservable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Isolated critical rays of e_a with their critical values — the spectrum.
/// Throws NonGenericObservable when eigenvalue gaps fall below gap_tol.
std::vector<CriticalPoint> critical_spectrum(const HermitianOperator& a,
                                             double gap_tol = kRankTol);

/// Centered finite-difference estimate of (L_{X_a} g)(v, w): transport the
/// base and both tangents with exp(-+ i a dt) and difference the metric
/// values. Vanishes (up to rounding) for Hermitian generators.
double killing_residual(const HermitianOperator& a, const ProjectivePoint& pt,
                        const TangentVector& v, const TangentVector& w,
                        double dt);

/// Same difference quotient along the gradient flow exp(+- a dt); gradient
/// flows are not isometries, so this is generically far from zero.
double gradient_killing_residual(const HermitianOperator& a,
                                 const ProjectivePoint& pt,
                                 const TangentVector& v,
                                 const TangentVector& w, double dt);

}  // namespace geomq
