#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// End-to-end runs of the installed binary; STOCHLIE_CLI_PATH is injected by
// the build.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(STOCHLIE_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 512> buffer;
  while (fgets(buffer.data(), buffer.size(), pipe)) result.output += buffer.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/stochlie_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("basis json output") {
  const RunResult r = run_cli("basis --n 3 --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("n") == 3);
  CHECK(j.at("elements").size() == 6);
  CHECK(j.at("invariants").at("pass") == true);
}

TEST_CASE("basis rejects n below 2") {
  const RunResult r = run_cli("basis --n 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("n must be >= 2") != std::string::npos);
}

TEST_CASE("basis text mode") {
  const RunResult r = run_cli("basis --n 4");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("gram residual") != std::string::npos);
}

TEST_CASE("classify outputs the A-series type") {
  const RunResult r5 = run_cli("classify --n 5 --format json");
  CHECK(r5.exit_code == 0);
  const auto j = nlohmann::json::parse(r5.output);
  CHECK(j.at("dynkin").at("detected_type") == "A_3");
  CHECK(j.at("killing").at("certificate").at("semisimple") == true);

  const RunResult r2 = run_cli("classify --n 2");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("trivial") != std::string::npos);
}

TEST_CASE("levi and generators pass") {
  const RunResult levi = run_cli("levi --n 6 --format json");
  CHECK(levi.exit_code == 0);
  const auto j = nlohmann::json::parse(levi.output);
  CHECK(j.at("clauses").at("ideal").at("residual").get<double>() < 1e-10);

  const RunResult gens = run_cli("generators --n 4 --format json");
  CHECK(gens.exit_code == 0);
  const auto g = nlohmann::json::parse(gens.output);
  CHECK(g.at("final_dim") == 12);
}

TEST_CASE("report aggregates everything") {
  const RunResult r = run_cli("report --n 3 --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("pass") == true);
  CHECK(j.contains("table"));
  CHECK(j.contains("killing"));
  CHECK(j.contains("levi"));
  CHECK(j.contains("two_generation"));
}

TEST_CASE("markov check exit codes and clauses") {
  const std::string good = write_temp("good.csv", "0.3,0.7\n0.4,0.6\n");
  const std::string bad = write_temp("bad.csv", "1.1,-0.1\n0.5,0.5\n");
  const std::string malformed = write_temp("malformed.csv", "0.5,x\n");

  CHECK(run_cli("markov check " + good).exit_code == 0);

  const RunResult rbad = run_cli("markov check " + bad);
  CHECK(rbad.exit_code == 1);
  CHECK(rbad.output.find("nonnegativity") != std::string::npos);

  CHECK(run_cli("markov check /tmp/definitely_missing_file.csv").exit_code == 2);
  CHECK(run_cli("markov check " + malformed).exit_code == 2);
}

TEST_CASE("markov flow and cone rejection") {
  const std::string cone = write_temp("cone.csv", "-2,2\n1,-1\n");
  const RunResult good = run_cli("markov flow " + cone + " --t 0.1 --t 1 --t 10");
  CHECK(good.exit_code == 0);

  const std::string violating = write_temp("notcone.csv", "1,-1\n0.5,-0.5\n");
  const RunResult bad = run_cli("markov flow " + violating);
  CHECK(bad.exit_code == 1);
}

TEST_CASE("markov semigroup") {
  const std::string family = write_temp("family.json", R"({
    "times": [0.0, 1.0, 2.0],
    "entries": [
      {"s": 0.0, "t": 1.0, "matrix": [[0.5, 0.5], [0.25, 0.75]]},
      {"s": 1.0, "t": 2.0, "matrix": [[0.5, 0.5], [0.25, 0.75]]},
      {"s": 0.0, "t": 2.0, "matrix": [[0.375, 0.625], [0.3125, 0.6875]]}
    ]
  })");
  const RunResult r = run_cli("markov semigroup " + family + " --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("pass") == true);

  const std::string broken = write_temp("family_broken.json", R"({
    "times": [0.0, 1.0, 2.0],
    "entries": [
      {"s": 0.0, "t": 1.0, "matrix": [[0.5, 0.5], [0.25, 0.75]]},
      {"s": 1.0, "t": 2.0, "matrix": [[0.5, 0.5], [0.25, 0.75]]},
      {"s": 0.0, "t": 2.0, "matrix": [[0.475, 0.525], [0.3125, 0.6875]]}
    ]
  })");
  CHECK(run_cli("markov semigroup " + broken).exit_code == 1);
}

TEST_CASE("simulate runs are reproducible byte for byte") {
  const std::string p = write_temp("sim.csv", "0.5,0.5\n0.5,0.5\n");
  const std::string out1 = "/tmp/stochlie_test_sim1.json";
  const std::string out2 = "/tmp/stochlie_test_sim2.json";
  CHECK(run_cli("markov simulate " + p +
                " --steps 4 --paths 5000 --seed 99 --format json --out " + out1)
            .exit_code == 0);
  CHECK(run_cli("markov simulate " + p +
                " --steps 4 --paths 5000 --seed 99 --format json --out " + out2)
            .exit_code == 0);
  std::ifstream f1(out1), f2(out2);
  const std::string s1((std::istreambuf_iterator<char>(f1)),
                       std::istreambuf_iterator<char>());
  const std::string s2((std::istreambuf_iterator<char>(f2)),
                       std::istreambuf_iterator<char>());
  CHECK(!s1.empty());
  CHECK(s1 == s2);
}

TEST_CASE("seed fixes randomized diagnostics bit for bit") {
  const std::string out1 = "/tmp/stochlie_test_cls1.json";
  const std::string out2 = "/tmp/stochlie_test_cls2.json";
  CHECK(run_cli("classify --n 4 --seed 5 --format json --out " + out1).exit_code == 0);
  CHECK(run_cli("classify --n 4 --seed 5 --format json --out " + out2).exit_code == 0);
  std::ifstream f1(out1), f2(out2);
  const std::string s1((std::istreambuf_iterator<char>(f1)),
                       std::istreambuf_iterator<char>());
  const std::string s2((std::istreambuf_iterator<char>(f2)),
                       std::istreambuf_iterator<char>());
  CHECK(!s1.empty());
  CHECK(s1 == s2);
}

TEST_CASE("simulate accepts an explicit initial distribution") {
  const std::string p = write_temp("sim_init.csv", "0.5,0.5\n0.25,0.75\n");
  const std::string init = write_temp("init.json", "[1.0, 0.0]");
  const RunResult r = run_cli("markov simulate " + p + " --steps 2 --paths 1000 " +
                              "--seed 3 --initial " + init + " --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("law")[0][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("basis").exit_code == 2);          // missing --n
  CHECK(run_cli("markov").exit_code == 2);         // missing subcommand
  CHECK(run_cli("basis --n 3 --format yaml").exit_code == 2);
}

}  // TEST_SUITE
