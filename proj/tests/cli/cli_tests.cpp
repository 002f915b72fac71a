// Drives the command-line tool as a subprocess.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SPINRTN_CLI_PATH) + " " + args + " 2>cli_stderr.txt";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> data_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

}  // namespace

TEST_CASE("every output starts with version, config and seed") {
  const Run r = run("trajectory --alpha 1 --lambda 2 --t 3 --seed 5 --n 4");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  CHECK(l1.rfind("# spinrtn ", 0) == 0);
  REQUIRE(l2.rfind("# config: ", 0) == 0);
  const auto cfg = nlohmann::json::parse(l2.substr(10));
  CHECK(cfg["lambda"] == 2.0);
  CHECK(cfg["seed"] == 5);
  CHECK(l3 == "# seed: 5");
  const auto rows = data_rows(r.out);
  CHECK(rows.size() == 5);  // header + 4 trajectories
}

TEST_CASE("same seed gives byte-identical output") {
  const Run a = run("montecarlo --alpha 1 --lambda 1 --t 1 --n 2000 --seed 7");
  const Run b = run("montecarlo --alpha 1 --lambda 1 --t 1 --n 2000 --seed 7 --threads 3");
  const Run c = run("montecarlo --alpha 1 --lambda 1 --t 1 --n 2000 --seed 8");
  REQUIRE(a.code == 0);
  // The config echo records the thread count, so compare data rows only.
  CHECK(data_rows(a.out) == data_rows(b.out));
  CHECK(data_rows(a.out) != data_rows(c.out));
}

TEST_CASE("superoperator tables have 16 x 16 complex columns") {
  const Run r = run("montecarlo --alpha 1 --lambda 1 --t 1 --n 100");
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() >= 2);
  CHECK(split(rows[0]).size() == 513);
  CHECK(split(rows[0])[1] == "re_0_0");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(split(rows[i]).size() == 513);
}

TEST_CASE("pdf table") {
  const Run r = run("pdf --lambda-t 2 --points 5");
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() >= 6);
  CHECK(split(rows[0])[0] == "xi");
  const auto mid = split(rows[3]);
  CHECK(std::stod(mid[0]) == 0.0);
  CHECK(std::stod(mid[2]) == doctest::Approx(0.5758595814814661).epsilon(1e-13));
}

TEST_CASE("closed form table starts at the identity") {
  const Run r = run("superop --alpha 1 --lambda 1 --t 2 --points 11 --quadrature");
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 12);
  const auto first = split(rows[1]);
  CHECK(std::stod(first[0]) == 0.0);
  CHECK(std::stod(first[2]) == 1.0);
}

TEST_CASE("compare reports quadrature agreement") {
  const Run r = run("compare --alpha 1 --lambda 1 --t 1 --n 1000");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["analytic_vs_quadrature"]["sup_norm"].get<double>() < 1e-9);
  CHECK(j.contains("analytic_vs_montecarlo"));
}

TEST_CASE("json report file") {
  const Run r = run("montecarlo --alpha 1 --lambda 2 --t 1 --n 500 --report cli_report.json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(read_file("cli_report.json"));
  CHECK(j["n_trajectories"] == 500);
  CHECK(j["master_seed"] == 42);
  CHECK(j["config"]["lambda"] == 2.0);
}

TEST_CASE("config file merges and flags override it") {
  {
    std::ofstream f("cli_config.json");
    f << R"({"alpha": 2.0, "t": 1.5, "seed": 9})";
  }
  const Run r = run("superop --config cli_config.json --alpha 0.5 --points 3");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  const auto cfg = nlohmann::json::parse(line.substr(10));
  CHECK(cfg["alpha"] == 0.5);
  CHECK(cfg["t"] == 1.5);
  CHECK(cfg["seed"] == 9);
}

TEST_CASE("sequence with correction") {
  const Run r = run("sequence --segments noise:1,gate:X1,noise:1 --lambda 0.025");
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  std::vector<std::string> parts;
  for (std::size_t i = 1; i < rows.size(); ++i) parts.push_back(split(rows[i])[0]);
  CHECK(std::find(parts.begin(), parts.end(), "raw") != parts.end());
  CHECK(std::find(parts.begin(), parts.end(), "corrected") != parts.end());
  CHECK(std::find(parts.begin(), parts.end(), "cross_terms") != parts.end());
}

TEST_CASE("compose from a spectrum config") {
  {
    std::ofstream f("cli_spectrum.json");
    f << R"({"spectrum": {"kind": "log_uniform", "lambda_min": 0.1, "lambda_max": 10,
             "alpha_spec": 0.1, "N": 10}})";
  }
  const Run r = run("compose --config cli_spectrum.json --t 1");
  CHECK(r.code == 0);
  CHECK(data_rows(r.out).size() >= 2);
}

TEST_CASE("validation failures exit with status 1 and no partial table") {
  for (const char* args : {"superop --alpha -1", "trajectory --lambda 0", "pdf --lambda-t -2", "trajectory --bogus",
                           "montecarlo --n 0", "sequence --segments noise:1,gate:Q1", "compose --t 1",
                           "superop --config does_not_exist.json"}) {
    CAPTURE(args);
    const Run r = run(args);
    CHECK(r.code == 1);
    CHECK(data_rows(r.out).empty());
  }
  const std::string err = (run("superop --alpha -1"), read_file("cli_stderr.txt"));
  CHECK(err.find("alpha") != std::string::npos);
}
