#include "geomq/scenario.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "geomq/bloch.hpp"
#include "geomq/states.hpp"

namespace geomq {

using nlohmann::json;

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw ScenarioError("matrix literal must be a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  Matrix m(rows, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != rows) {
      throw ScenarioError("matrix literal must be square");
    }
    for (std::size_t c = 0; c < rows; ++c) {
      const json& entry = row.at(c);
      if (!entry.is_array() || entry.size() != 2 ||
          !entry.at(0).is_number() || !entry.at(1).is_number()) {
        throw ScenarioError("matrix entries must be [re, im] pairs");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix observable_from_json(const json& j) {
  if (j.is_object() && j.contains("pauli")) {
    const json& coeffs = j.at("pauli");
    if (!coeffs.is_array() || coeffs.size() != 4) {
      throw ScenarioError("pauli observable needs 4 coefficients [a0,a1,a2,a3]");
    }
    Eigen::Vector3d a;
    for (int k = 0; k < 3; ++k) a[k] = coeffs.at(k + 1).get<double>();
    return pauli_combination(coeffs.at(0).get<double>(), a);
  }
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  return matrix_from_json(j);
}

Matrix state_matrix_from_json(const json& j) {
  if (j.is_object() && j.contains("ket")) {
    const json& entries = j.at("ket");
    if (!entries.is_array() || entries.empty()) {
      throw ScenarioError("ket state needs a nonempty array of [re, im] pairs");
    }
    Vector psi(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const json& entry = entries.at(k);
      if (!entry.is_array() || entry.size() != 2) {
        throw ScenarioError("ket entries must be [re, im] pairs");
      }
      psi[static_cast<Eigen::Index>(k)] =
          Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
    try {
      return pure_projector(ProjectivePoint(psi)).matrix();
    } catch (const std::exception& err) {
      throw ScenarioError(std::string("ket state: ") + err.what());
    }
  }
  if (j.is_object() && j.contains("bloch")) {
    const json& x = j.at("bloch");
    if (!x.is_array() || x.size() != 3) {
      throw ScenarioError("bloch state needs 3 components [x1,x2,x3]");
    }
    try {
      BlochVector v(x.at(0).get<double>(), x.at(1).get<double>(),
                    x.at(2).get<double>());
      return state_from_bloch(v).matrix();
    } catch (const std::exception& err) {
      throw ScenarioError(std::string("bloch state: ") + err.what());
    }
  }
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  return matrix_from_json(j);
}

namespace {

template <typename F>
auto rethrow_as_scenario_error(F&& make, const char* field) {
  try {
    return make();
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& err) {
    throw ScenarioError(std::string(field) + ": " + err.what());
  }
}

}  // namespace

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
  Scenario sc;

  if (j.contains("system")) {
    const json& sys = j.at("system");
    if (sys.contains("dimA") || sys.contains("dimB")) {
      if (!sys.contains("dimA") || !sys.contains("dimB")) {
        throw ScenarioError("bipartite system needs both dimA and dimB");
      }
      sc.bipartite = rethrow_as_scenario_error(
          [&] {
            return BipartiteSystem(sys.at("dimA").get<int>(),
                                   sys.at("dimB").get<int>());
          },
          "system");
      sc.dim = sc.bipartite->total();
    } else if (sys.contains("dim")) {
      sc.dim = sys.at("dim").get<int>();
      if (*sc.dim < 1) throw ScenarioError("system.dim must be >= 1");
    }
  }

  auto check_dim = [&](int found, const char* field) {
    if (sc.dim && *sc.dim != found) {
      throw ScenarioError(std::string(field) + ": dimension disagrees with system spec");
    }
    if (!sc.dim) sc.dim = found;
  };

  if (j.contains("hamiltonian")) {
    Matrix h = rethrow_as_scenario_error(
        [&] { return observable_from_json(j.at("hamiltonian")); }, "hamiltonian");
    check_dim(static_cast<int>(h.rows()), "hamiltonian");
    sc.hamiltonian = rethrow_as_scenario_error(
        [&] { return HermitianOperator(std::move(h)); }, "hamiltonian");
  }

  if (j.contains("lindblad_ops")) {
    const json& ops = j.at("lindblad_ops");
    if (!ops.is_array()) throw ScenarioError("lindblad_ops must be an array");
    for (const json& op : ops) {
      Matrix v = rethrow_as_scenario_error([&] { return matrix_from_json(op); },
                                           "lindblad_ops");
      check_dim(static_cast<int>(v.rows()), "lindblad_ops");
      sc.lindblad_ops.push_back(std::move(v));
    }
  }

  if (j.contains("rho0")) {
    Matrix r = rethrow_as_scenario_error(
        [&] { return state_matrix_from_json(j.at("rho0")); }, "rho0");
    check_dim(static_cast<int>(r.rows()), "rho0");
    sc.rho0 = rethrow_as_scenario_error(
        [&] { return QuantumState(std::move(r)); }, "rho0");
  }

  if (j.contains("dt") || j.contains("t_final")) {
    sc.has_flow = true;
    if (j.contains("dt")) sc.flow.dt = j.at("dt").get<double>();
    if (j.contains("t_final")) sc.flow.t_final = j.at("t_final").get<double>();
    if (j.contains("record_every")) sc.flow.record_every = j.at("record_every").get<int>();
    if (j.contains("integrator")) {
      const std::string name = j.at("integrator").get<std::string>();
      if (name == "rk4") {
        sc.flow.integrator = Integrator::rk4;
      } else if (name == "exact-unitary") {
        sc.flow.integrator = Integrator::exact_unitary;
      } else {
        throw ScenarioError("integrator must be rk4 or exact-unitary");
      }
    }
    rethrow_as_scenario_error([&] { validate(sc.flow); return 0; }, "flow config");
  }

  if (j.contains("observable")) {
    Matrix a = rethrow_as_scenario_error(
        [&] { return observable_from_json(j.at("observable")); }, "observable");
    check_dim(static_cast<int>(a.rows()), "observable");
    sc.observable = rethrow_as_scenario_error(
        [&] { return HermitianOperator(std::move(a)); }, "observable");
  }

  if (j.contains("state")) {
    Matrix r = rethrow_as_scenario_error(
        [&] { return state_matrix_from_json(j.at("state")); }, "state");
    check_dim(static_cast<int>(r.rows()), "state");
    sc.state = rethrow_as_scenario_error(
        [&] { return QuantumState(std::move(r)); }, "state");
  }

  if (j.contains("samples")) sc.samples = j.at("samples").get<long>();
  if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& err) {
    throw ScenarioError("scenario parse failure: " + std::string(err.what()));
  }
  return parse_scenario(j);
}

}  // namespace geomq
