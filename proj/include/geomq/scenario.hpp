#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "geomq/composition.hpp"
#include "geomq/dynamics.hpp"

namespace geomq {

/// Malformed or inconsistent scenario input (CLI exit code 2).
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix literals travel as nested arrays of [re, im] pairs. Dim-2
// observables may be given as {"pauli": [a0, a1, a2, a3]} and dim-2 states
// as {"bloch": [x1, x2, x3]}.
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

Matrix observable_from_json(const nlohmann::json& j);
Matrix state_matrix_from_json(const nlohmann::json& j);

struct Scenario {
  std::optional<int> dim;
  std::optional<BipartiteSystem> bipartite;

  std::optional<HermitianOperator> hamiltonian;
  std::vector<Matrix> lindblad_ops;
  std::optional<QuantumState> rho0;

  FlowConfig flow;
  bool has_flow = false;

  std::optional<HermitianOperator> observable;
  std::optional<QuantumState> state;
  std::optional<long> samples;
  std::optional<std::uint64_t> seed;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const nlohmann::json& j);

}  // namespace geomq
