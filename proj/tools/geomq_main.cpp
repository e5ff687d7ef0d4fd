// geomq: geometric quantum mechanics toolbox.
//
// Subcommands:
//   verify  [suite]      run invariant suites, emit a residual report
//   flow    <scenario>   integrate a scenario, write the trajectory
//   measure <scenario>   outcome probabilities / pairing-integral estimate
//
// Exit codes: 0 success, 1 invariant or check failure, 2 input error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "geomq/bloch.hpp"
#include "geomq/composition.hpp"
#include "geomq/measurement.hpp"
#include "geomq/scenario.hpp"
#include "geomq/verify.hpp"

namespace {

using geomq::Matrix;
using geomq::QuantumState;
using geomq::Scenario;
using geomq::Trajectory;
using nlohmann::json;

std::string format_float(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_outcome(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%+.12g", value);
  return buffer;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed,
                           const std::optional<std::uint64_t>& scenario_seed) {
  if (flag_seed) return *flag_seed;
  if (scenario_seed) return *scenario_seed;
  if (const char* env = std::getenv("GEOMQ_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 12345;
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw geomq::ScenarioError("cannot open output file: " + out_path);
  out << payload;
}

json report_to_json(const std::vector<geomq::SuiteReport>& reports,
                    std::uint64_t seed, geomq::BracketConvention convention) {
  json doc;
  doc["seed"] = seed;
  doc["bracket_convention"] =
      convention == geomq::BracketConvention::internal ? "internal" : "paper";
  int failures = 0;
  json suites = json::array();
  for (const geomq::SuiteReport& report : reports) {
    json checks = json::array();
    for (const geomq::CheckResult& check : report.checks) {
      json entry;
      entry["name"] = check.name;
      entry["residual"] = check.residual;
      entry["tolerance"] = check.tolerance;
      entry["comparison"] = check.require_at_least ? "residual > tolerance"
                                                   : "residual <= tolerance";
      entry["pass"] = check.pass;
      if (!check.note.empty()) entry["note"] = check.note;
      checks.push_back(std::move(entry));
    }
    failures += report.failures();
    suites.push_back(
        {{"suite", report.suite},
         {"failures", report.failures()},
         {"checks", std::move(checks)}});
  }
  doc["suites"] = std::move(suites);
  doc["failures"] = failures;
  return doc;
}

std::string report_to_csv(const std::vector<geomq::SuiteReport>& reports) {
  std::string out = "suite,check,residual,tolerance,pass\n";
  for (const geomq::SuiteReport& report : reports) {
    for (const geomq::CheckResult& check : report.checks) {
      out += report.suite + "," + check.name + "," +
             format_float(check.residual) + "," +
             format_float(check.tolerance) + "," +
             (check.pass ? "1" : "0") + "\n";
    }
  }
  return out;
}

int cmd_verify(const std::string& suite, const geomq::VerifyOptions& opts,
               const std::string& fixture, const std::string& format,
               const std::string& out_path) {
  std::vector<geomq::SuiteReport> reports;
  if (suite == "all") {
    reports = geomq::run_all_suites(opts);
  } else {
    reports.push_back(geomq::run_suite(suite, opts));
  }
  if (!fixture.empty()) {
    reports.push_back(geomq::validate_fixture_file(fixture, opts));
  }
  int failures = 0;
  for (const geomq::SuiteReport& report : reports) failures += report.failures();

  if (format == "csv") {
    write_output(out_path, report_to_csv(reports));
  } else {
    write_output(out_path,
                 report_to_json(reports, opts.seed, opts.convention).dump(2) + "\n");
  }
  return failures == 0 ? 0 : 1;
}

// Trajectory serialization. Dim-2 states are exported as Bloch columns, all
// others as flattened row-major entries; a purity column is always present.
std::string trajectory_csv(const Trajectory& traj) {
  const int dim = traj.states.front().dim();
  std::string out = "t";
  if (dim == 2) {
    out += ",x1,x2,x3";
  } else {
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        out += ",rho_" + std::to_string(i) + std::to_string(j) + "_re";
        out += ",rho_" + std::to_string(i) + std::to_string(j) + "_im";
      }
    }
  }
  out += ",purity\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out += format_float(traj.times[k]);
    const QuantumState& s = traj.states[k];
    if (dim == 2) {
      const geomq::BlochVector x = geomq::bloch_from_state(s);
      for (int j = 0; j < 3; ++j) out += "," + format_float(x.x[j]);
    } else {
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          out += "," + format_float(s.matrix()(i, j).real());
          out += "," + format_float(s.matrix()(i, j).imag());
        }
      }
    }
    out += "," + format_float(s.purity()) + "\n";
  }
  return out;
}

json trajectory_json(const Trajectory& traj) {
  const int dim = traj.states.front().dim();
  json doc;
  doc["times"] = traj.times;
  json purity = json::array();
  for (const QuantumState& s : traj.states) purity.push_back(s.purity());
  doc["purity"] = std::move(purity);
  if (dim == 2) {
    json bloch = json::array();
    for (const QuantumState& s : traj.states) {
      const geomq::BlochVector x = geomq::bloch_from_state(s);
      bloch.push_back({x.x[0], x.x[1], x.x[2]});
    }
    doc["bloch"] = std::move(bloch);
  } else {
    json states = json::array();
    for (const QuantumState& s : traj.states) {
      states.push_back(geomq::matrix_to_json(s.matrix()));
    }
    doc["states"] = std::move(states);
  }
  return doc;
}

int cmd_flow(const std::string& scenario_path, const std::string& out_path,
             const std::string& format) {
  const Scenario sc = geomq::load_scenario(scenario_path);
  if (!sc.rho0) throw geomq::ScenarioError("flow scenario needs rho0");
  if (!sc.hamiltonian && sc.lindblad_ops.empty()) {
    throw geomq::ScenarioError("flow scenario needs a hamiltonian or lindblad_ops");
  }
  if (!sc.has_flow) throw geomq::ScenarioError("flow scenario needs dt/t_final");

  Trajectory traj;
  if (sc.bipartite) {
    if (!sc.hamiltonian) {
      throw geomq::ScenarioError("bipartite flow needs a global hamiltonian");
    }
    if (!sc.lindblad_ops.empty()) {
      throw geomq::ScenarioError("projected evolution is unitary; lindblad_ops not supported");
    }
    traj = geomq::projected_evolution(*sc.hamiltonian, *sc.rho0, *sc.bipartite,
                                      sc.flow);
  } else {
    geomq::HermitianOperator h =
        sc.hamiltonian ? *sc.hamiltonian
                       : geomq::HermitianOperator(
                             Matrix(Matrix::Zero(sc.rho0->dim(), sc.rho0->dim())));
    geomq::LindbladGenerator gen(std::move(h), sc.lindblad_ops);
    for (const std::string& warning : gen.canonical_form_warnings()) {
      std::cerr << "warning: " << warning << "\n";
    }
    traj = geomq::integrate(gen, *sc.rho0, sc.flow);
  }

  if (format == "json") {
    write_output(out_path, trajectory_json(traj).dump(2) + "\n");
  } else {
    write_output(out_path, trajectory_csv(traj));
  }
  return 0;
}

struct MeasureFlags {
  std::string observable_json;
  std::string state_json;
  std::optional<long> samples;
};

int cmd_measure(const std::string& scenario_path, const MeasureFlags& flags,
                const std::optional<std::uint64_t>& flag_seed) {
  Scenario sc;
  if (!scenario_path.empty()) {
    sc = geomq::load_scenario(scenario_path);
  }
  // Inline flags override / replace the scenario file.
  try {
    if (!flags.observable_json.empty()) {
      sc.observable = geomq::HermitianOperator(
          geomq::observable_from_json(json::parse(flags.observable_json)));
    }
    if (!flags.state_json.empty()) {
      sc.state = QuantumState(
          geomq::state_matrix_from_json(json::parse(flags.state_json)));
    }
  } catch (const geomq::ScenarioError&) {
    throw;
  } catch (const std::exception& err) {
    throw geomq::ScenarioError(std::string("measure flags: ") + err.what());
  }
  if (flags.samples) sc.samples = flags.samples;
  if (!sc.observable) throw geomq::ScenarioError("measure scenario needs an observable");
  if (!sc.state) throw geomq::ScenarioError("measure scenario needs a state");
  if (sc.observable->dim() != sc.state->dim()) {
    throw geomq::ScenarioError("measure: observable/state dimension mismatch");
  }

  json doc;
  const geomq::FiniteGPOVMeasure measure = geomq::gpov_from_observable(*sc.observable);
  std::vector<geomq::HermitianOperator> projectors = measure.effects();
  const geomq::ResolutionOfIdentity resolution(std::move(projectors));
  const geomq::RealVector p = geomq::probabilities_mixed(resolution, *sc.state);
  json probabilities;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    probabilities[format_outcome(measure.outcomes()[static_cast<std::size_t>(k)])] =
        p[k];
  }
  doc["probabilities"] = std::move(probabilities);

  if (sc.samples) {
    const std::uint64_t seed = resolve_seed(flag_seed, sc.seed);
    const geomq::PairingEstimate est = geomq::pairing_integral(
        *sc.state, geomq::ExpectationFunction(*sc.observable), *sc.samples, seed);
    doc["pairing"] = {{"estimate", est.estimate},
                      {"std_error", est.std_error},
                      {"n", est.n},
                      {"seed", seed}};
  }
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geomq: Kahler-geometric picture of finite-dimensional quantum mechanics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "random seed (fallback: GEOMQ_SEED, then 12345)");

  std::string format = "csv";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string out_path;
  app.add_option("--out", out_path, "output file (default: stdout)");

  double tolerance = geomq::kRankTol;
  app.add_option("--tolerance", tolerance,
                 "rank-cutoff override for the verify suites");

  std::string convention = "internal";
  app.add_option("--bracket-convention", convention,
                 "Poisson generator normalization: [a,b]/(2i) or the paper's i[a,b]")
      ->check(CLI::IsMember({"internal", "paper"}));

  auto* verify = app.add_subcommand("verify", "run invariant suites");
  std::string suite = "all";
  verify->add_option("suite", suite, "algebra | geometry | dynamics | composition | all");
  std::string fixture;
  verify->add_option("--fixture", fixture, "extra states/observables file to validate");

  auto* flow = app.add_subcommand("flow", "integrate a scenario and write the trajectory");
  std::string flow_scenario;
  flow->add_option("scenario", flow_scenario, "scenario JSON path")->required();

  auto* measure = app.add_subcommand("measure", "outcome probabilities and pairing integral");
  std::string measure_scenario;
  measure->add_option("scenario", measure_scenario, "scenario JSON path");
  MeasureFlags measure_flags;
  measure->add_option("--observable", measure_flags.observable_json,
                      "inline observable JSON (matrix or {\"pauli\": ...})");
  measure->add_option("--state", measure_flags.state_json,
                      "inline state JSON (matrix, {\"bloch\": ...} or {\"ket\": ...})");
  measure->add_option("--samples", measure_flags.samples,
                      "pairing-integral sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      if (suite != "all") {
        const auto& names = geomq::suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end()) {
          std::cerr << "error: unknown suite name: " << suite << "\n";
          return 2;
        }
      }
      geomq::VerifyOptions opts;
      opts.seed = resolve_seed(seed, std::nullopt);
      opts.rank_tolerance = tolerance;
      opts.convention = convention == "paper" ? geomq::BracketConvention::paper
                                              : geomq::BracketConvention::internal;
      const std::string verify_format = format == "csv" && out_path.empty() &&
                                                !app.count("--format")
                                            ? "json"
                                            : format;
      return cmd_verify(suite, opts, fixture, verify_format, out_path);
    }
    if (flow->parsed()) {
      return cmd_flow(flow_scenario, out_path, format);
    }
    if (measure->parsed()) {
      return cmd_measure(measure_scenario, measure_flags, seed);
    }
  } catch (const geomq::ScenarioError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
