// End-to-end checks of the geomq binary: exit codes, file formats, and
// byte-level determinism.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args, bool raw = false) {
  const std::string command =
      (raw ? args : std::string(GEOMQ_CLI_PATH) + " " + args) + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof(buffer), pipe)) {
    output.append(buffer, n);
  }
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string fixture(const std::string& name) {
  return std::string(GEOMQ_FIXTURE_DIR) + "/" + name;
}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::string* header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("flow: phase damping CSV decays like exp(-2 gamma t)") {
  const RunResult r = run("flow " + fixture("phase_damping.json"));
  REQUIRE(r.exit_code == 0);
  std::string header;
  const auto rows = parse_csv(r.output, &header);
  CHECK(header == "t,x1,x2,x3,purity");
  REQUIRE(!rows.empty());
  for (const auto& row : rows) {
    REQUIRE(row.size() == 5);
    const double t = row[0], x1 = row[1];
    CHECK(std::abs(x1 - std::exp(-t)) < 1e-6);  // gamma = 0.5
  }
  CHECK(rows.back()[0] == doctest::Approx(1.0));
}

TEST_CASE("flow: closed system keeps purity at one") {
  const RunResult r = run("flow " + fixture("closed_qubit.json"));
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.output, nullptr);
  REQUIRE(!rows.empty());
  for (const auto& row : rows) {
    CHECK(std::abs(row[4] - 1.0) < 1e-8);
  }
  // Bloch (1,0,0) rotated by 2t = pi about the 3-axis.
  CHECK(rows.back()[1] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("flow: higher-dimensional states export flattened matrices") {
  const RunResult r = run("flow " + fixture("three_level.json"));
  REQUIRE(r.exit_code == 0);
  std::string header;
  const auto rows = parse_csv(r.output, &header);
  CHECK(header.find("rho_00_re") != std::string::npos);
  CHECK(header.find("rho_22_im") != std::string::npos);
  CHECK(header.find("purity") != std::string::npos);
  REQUIRE(!rows.empty());
  // Unitary evolution preserves purity.
  for (const auto& row : rows) {
    CHECK(row.back() == doctest::Approx(rows.front().back()).epsilon(1e-10));
  }

  const RunResult j = run("flow --format json " + fixture("three_level.json"));
  CHECK(j.exit_code == 0);
  CHECK(j.output.find("\"states\"") != std::string::npos);
}

TEST_CASE("flow: bipartite projected evolution reports subsystem purity") {
  const RunResult r = run("flow " + fixture("bipartite_mixing.json"));
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.output, nullptr);
  REQUIRE(!rows.empty());
  CHECK(rows.front()[4] > 0.9);
  CHECK(rows.back()[4] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("flow: malformed scenario exits with code 2") {
  CHECK(run("flow " + fixture("malformed.json")).exit_code == 2);
  CHECK(run("flow /does/not/exist.json").exit_code == 2);
}

TEST_CASE("flow output is byte-identical across runs") {
  const RunResult a = run("flow " + fixture("phase_damping.json"));
  const RunResult b = run("flow " + fixture("phase_damping.json"));
  CHECK(a.output == b.output);

  const RunResult ja = run("flow --format json " + fixture("phase_damping.json"));
  const RunResult jb = run("flow --format json " + fixture("phase_damping.json"));
  CHECK(ja.exit_code == 0);
  CHECK(ja.output == jb.output);
}

TEST_CASE("measure: Born probabilities of sigma_3 on |+>") {
  const RunResult r = run("measure " + fixture("measure_sigma3_plus.json"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("\"+1\": 0.5") != std::string::npos);
  CHECK(r.output.find("\"-1\": 0.5") != std::string::npos);
}

TEST_CASE("measure: pairing estimate is deterministic per seed") {
  const RunResult a = run("measure " + fixture("pairing_identity.json"));
  const RunResult b = run("measure " + fixture("pairing_identity.json"));
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("\"estimate\": 0.5") != std::string::npos);

  // Missing state field is an input error.
  CHECK(run("measure " + fixture("malformed.json")).exit_code == 2);
  CHECK(run("measure " + fixture("measure_missing_state.json")).exit_code == 2);
}

TEST_CASE("measure: inline observable/state flags") {
  const RunResult r = run(
      "measure --observable '{\"pauli\": [0, 0, 0, 1]}' "
      "--state '{\"ket\": [[1, 0], [1, 0]]}'");
  REQUIRE(r.exit_code == 0);
  const std::size_t pos = r.output.find("\"+1\": ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.output.substr(pos + 6)) == doctest::Approx(0.5));

  const RunResult mismatch = run(
      "measure --observable '{\"pauli\": [0, 0, 0, 1]}' "
      "--state '[[[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]'");
  CHECK(mismatch.exit_code == 2);
}

TEST_CASE("GEOMQ_SEED environment fallback") {
  const std::string cmd =
      "measure --observable '{\"pauli\": [1, 0, 0, 0]}' "
      "--state '{\"bloch\": [0, 0, 0]}' --samples 2000";
  const RunResult a = run("env GEOMQ_SEED=777 " + std::string(GEOMQ_CLI_PATH) +
                              " " + cmd,
                          /*raw=*/true);
  const RunResult b = run("env GEOMQ_SEED=777 " + std::string(GEOMQ_CLI_PATH) +
                              " " + cmd,
                          /*raw=*/true);
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("\"seed\": 777") != std::string::npos);
}

TEST_CASE("verify: suites pass and corrupted fixtures fail") {
  const RunResult ok = run("verify dynamics --seed 11");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("gkls_nonlinearity_cancellation") != std::string::npos);

  const RunResult bad =
      run("verify dynamics --seed 11 --fixture " + fixture("corrupted_state.json"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("state_invariants[0]") != std::string::npos);

  CHECK(run("verify bogus").exit_code == 2);
}

TEST_CASE("verify: csv report format") {
  const RunResult r = run("verify composition --seed 5 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("suite,check,residual,tolerance,pass", 0) == 0);
}

TEST_CASE("verify: reports are byte-identical per seed") {
  const RunResult a = run("verify composition --seed 9");
  const RunResult b = run("verify composition --seed 9");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
}
