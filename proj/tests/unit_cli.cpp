#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pedops/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::vector<const char*> argv = {"pedops"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.code = pedops::run_cli(static_cast<int>(argv.size()), argv.data(), out,
                           err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("weights csv output") {
  const CliResult r =
      run({"weights", "--n", "2", "--lambda=-1", "--x", "0.5"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,weight,cumulative");
  const double expect_w[] = {0.25, 0.5, 0.25};
  for (int k = 0; k <= 2; ++k) {
    REQUIRE(std::getline(lines, line));
    long kk = -1;
    double w = 0.0, cum = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%ld,%lf,%lf", &kk, &w, &cum) == 3);
    CHECK(kk == k);
    CHECK(w == doctest::Approx(expect_w[k]).epsilon(1e-13));
  }
}

TEST_CASE("weights json output") {
  const CliResult r = run({"weights", "--n", "3", "--lambda", "0", "--x", "1",
                           "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["params"]["n"] == 3);
  CHECK(doc["params"]["lambda"] == 0);
  const auto& rows = doc["rows"];
  REQUIRE(rows.size() >= 3);
  CHECK(rows[2]["k"] == 2);
  CHECK(double(rows[2]["weight"]) == doctest::Approx(0.1875).epsilon(1e-13));
  CHECK(double(rows.back()["cumulative"]) >= 1.0 - 1e-12);
}

TEST_CASE("apply emits grid rows") {
  const CliResult r =
      run({"apply", "--f", "square", "--case", "bernstein", "--n", "10",
           "--x-grid", "0.5:0.5:1", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["rows"].size() == 1);
  CHECK(double(doc["rows"][0]["Lf"]) == doctest::Approx(0.275).epsilon(1e-12));
  CHECK(double(doc["rows"][0]["abs_error"]) ==
        doctest::Approx(0.025).epsilon(1e-10));
}

TEST_CASE("moments report json") {
  const CliResult r =
      run({"moments", "--case", "bernstein", "--n", "10", "--x", "0.5"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(double(doc["raw"][2]) == doctest::Approx(0.275).epsilon(1e-13));
  CHECK(double(doc["phi"]) == doctest::Approx(0.025).epsilon(1e-13));
  for (const auto& flag : doc["raw_consistent"]) CHECK(bool(flag));
  for (const auto& flag : doc["central_consistent"]) CHECK(bool(flag));
  CHECK(double(doc["tail_mass_deficit"]) <= 1e-12);
}

TEST_CASE("verify subcommand exit codes and ledger") {
  const CliResult clean = run({"verify", "--suite", "special-cases"});
  CHECK(clean.code == 0);
  const json doc = json::parse(clean.out);
  CHECK(doc["failed"] == 0);

  const CliResult central = run({"verify", "--suite", "central"});
  CHECK(central.code == 2);
  const json cdoc = json::parse(central.out);
  CHECK(cdoc["unexpected_failed"] == 0);
  bool saw_expected = false;
  for (const auto& c : cdoc["checks"]) {
    if (c["status"] == "expected") {
      saw_expected = true;
      CHECK(c["id"] == "first-central-moment-printed-form");
    }
  }
  CHECK(saw_expected);
}

TEST_CASE("bounds local report") {
  const CliResult r =
      run({"bounds", "--theorem", "local", "--case", "bernstein", "--n", "10",
           "--f", "square", "--x-grid", "0.25:0.75:3"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["reports"].size() == 3);
  for (const auto& rep : doc["reports"]) {
    CHECK(double(rep["measured_error"]) <= double(rep["bound"]));
    CHECK(double(rep["constants"]["C"]) >= 1.0);
  }
}

TEST_CASE("converge report") {
  const CliResult r =
      run({"converge", "--case", "bernstein", "--f", "square", "--n-list",
           "5,10,20,40", "--x-grid", "0.5:0.5:1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(double(doc["points"][0]["slope"]) == doctest::Approx(-1.0).epsilon(0.01));
}

TEST_CASE("byte-identical reruns") {
  const std::vector<std::vector<std::string>> cmds = {
      {"weights", "--n", "6", "--p", "1", "--alpha", "0.05", "--lambda", "0",
       "--x", "1.5", "--format", "json"},
      {"apply", "--f", "exp(-x)*(1+x)", "--n", "8", "--lambda", "0",
       "--x-grid", "0:2:5", "--format", "csv"},
      {"moments", "--n", "10", "--p", "2", "--alpha", "1/n", "--lambda=-1",
       "--x", "0.625"},
      {"verify", "--suite", "special-cases"},
      {"bounds", "--theorem", "lipschitz", "--case", "bernstein", "--n", "16",
       "--f", "sqrt", "--x-grid", "0.25:0.75:3"},
      {"converge", "--case", "lupas", "--f", "square", "--n-list",
       "5,10,20,40", "--x-grid", "0.25:0.75:3"},
  };
  for (const auto& cmd : cmds) {
    const CliResult a = run(cmd);
    const CliResult b = run(cmd);
    CAPTURE(cmd[0]);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("usage and validation failures exit 1") {
  CHECK(run({"weights", "--n", "2"}).code == 1);             // missing --x
  CHECK(run({"weights", "--n", "2", "--lambda", "7", "--x", "0.5"}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"weights", "--n", "2", "--lambda=-1", "--x", "1.5"}).code == 1);
  CHECK(run({"apply", "--f", "2**x", "--n", "5", "--lambda=-1", "--x-grid",
             "0:1:3"}).code == 1);
  CHECK(run({"apply", "--f", "square", "--n", "5", "--lambda=-1", "--x-grid",
             "0:1:0"}).code == 1);
  CHECK(run({"moments", "--case", "bernstein", "--n", "10", "--x", "0.5",
             "--order", "5"}).code == 1);
  CHECK(run({"moments", "--case", "bernstein", "--n", "10", "--p", "2",
             "--x", "0.5"}).code == 1);  // p not accepted for bernstein
  CHECK(run({"weights", "--n", "5", "--lambda", "0", "--alpha", "bogus",
             "--x", "1"}).code == 1);
}

TEST_CASE("numeric evaluation failures exit 3") {
  const CliResult r = run({"apply", "--f", "1/(x-0.2)", "--n", "5",
                           "--lambda=-1", "--x-grid", "0.5:0.5:1"});
  CHECK(r.code == 3);
  CHECK(r.err.find("numeric") != std::string::npos);
}

TEST_CASE("output lands in the requested file") {
  const std::string path = "cli_test_output.csv";
  const CliResult r = run({"weights", "--n", "2", "--lambda=-1", "--x", "0.5",
                           "--output", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().find("k,weight,cumulative") == 0);
  std::remove(path.c_str());
}
