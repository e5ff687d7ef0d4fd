#pragma once

#include "geomq/dynamics.hpp"

namespace geomq {

/// Bipartite factorization H_A (x) H_B; indexing is A-major throughout:
/// index = iA * dimB + iB.
struct BipartiteSystem {
  int dim_a;
  int dim_b;

  BipartiteSystem(int a, int b);

  int total() const { return dim_a * dim_b; }
};

struct CompositeDimensions {
  int projective_dim;  // 2 (dimA dimB - 1)
  int separable_dim;   // 2 (dimA - 1) + 2 (dimB - 1)
};

/// Real dimension count of the composite projective space against the
/// product of the factors' projective spaces; the gap accounts for the
/// entangled states.
CompositeDimensions composite_dimension(int dim_a, int dim_b);

/// Subsystem state via partial trace; satisfies Tr(rho_A a) =
/// Tr(rho_AB (a (x) I_B)) for every observable a of the kept factor.
QuantumState project_subsystem(const QuantumState& rho_ab,
                               const BipartiteSystem& sys, Subsystem which);

/// Tr((rho_AB - rho_A (x) rho_B)^k); zero on product states, nonnegative for
/// even k.
double entanglement_measure(const QuantumState& rho_ab,
                            const BipartiteSystem& sys, int k);

/// Global unitary evolution under H_AB with the A-subsystem recorded: each
/// trajectory entry is partial-traced from U(t) rho0 U(t)^dag.
Trajectory projected_evolution(const HermitianOperator& h_ab,
                               const QuantumState& rho0_ab,
                               const BipartiteSystem& sys,
                               const FlowConfig& cfg);

}  // namespace geomq
