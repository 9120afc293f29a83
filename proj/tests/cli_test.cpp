#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommandResult {
  int exit_code;
  std::string output;
};

// Runs the built CLI with stderr folded into stdout.
CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QPENCIL_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
    output += buf.data();
  }
  const int status = pclose(pipe);
  return CommandResult{WEXITSTATUS(status), output};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qpencil_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve example1 reproduces the four published levels") {
  const fs::path out = fresh_dir("example1");
  const auto res = run_cli("solve example1 --levels 4 --out-dir " +
                           out.string());
  CHECK(res.exit_code == 0);
  const json summary = json::parse(slurp(out / "summary.json"));
  REQUIRE(summary.at("levels").size() == 4);
  const double method[4] = {0.33326, 0.97205, 1.02106, 1.56964};
  const double exact[4] = {0.33162, 0.97204, 1.01575, 1.56765};
  for (int k = 0; k < 4; ++k) {
    const double lambda =
        summary.at("levels")[k].at("final_lambda").get<double>();
    CHECK(std::abs(lambda - method[k]) <= 5e-3);
    CHECK(std::abs(summary.at("oracle_lambdas")[k].get<double>() -
                   exact[k]) <= 1e-5);
  }
  for (int k = 0; k < 4; ++k) {
    CHECK(fs::exists(out / ("level" + std::to_string(k) + "_trace.csv")));
  }
  CHECK(fs::exists(out / "oracle.json"));
}

TEST_CASE("solve example2 reaches the singular-B eigenvalue") {
  const fs::path out = fresh_dir("example2");
  const auto res = run_cli("solve example2 --out-dir " + out.string());
  CHECK(res.exit_code == 0);
  const json summary = json::parse(slurp(out / "summary.json"));
  const double lambda =
      summary.at("levels")[0].at("final_lambda").get<double>();
  CHECK(std::abs(lambda - 0.150005) <= 1e-3);
}

TEST_CASE("identical config and seed give byte-identical artifacts") {
  const fs::path out1 = fresh_dir("repro1");
  const fs::path out2 = fresh_dir("repro2");
  CHECK(run_cli("solve example3 --levels 1 --out-dir " + out1.string())
            .exit_code == 0);
  CHECK(run_cli("solve example3 --levels 1 --out-dir " + out2.string())
            .exit_code == 0);
  CHECK(slurp(out1 / "level0_trace.csv") == slurp(out2 / "level0_trace.csv"));
  CHECK(slurp(out1 / "summary.json") == slurp(out2 / "summary.json"));
}

TEST_CASE("trace CSV carries the documented header") {
  const fs::path out = fresh_dir("header");
  CHECK(run_cli("solve example2 --out-dir " + out.string()).exit_code == 0);
  std::ifstream csv(out / "level0_trace.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "tau,F,residual,theta_0,theta_1,theta_2,theta_3");
}

TEST_CASE("oracle subcommand prints the eigenpair set as JSON") {
  const auto res = run_cli("oracle example2");
  CHECK(res.exit_code == 0);
  const json eig = json::parse(res.output);
  CHECK(eig.at("b_rank").get<int>() == 1);
  REQUIRE(eig.at("pairs").size() == 1);
  CHECK(std::abs(eig.at("pairs")[0].at("lambda").get<double>() - 0.15) <=
        1e-9);
}

TEST_CASE("decompose prints coefficient-word lines for a matrix file") {
  const fs::path dir = fresh_dir("decompose");
  const fs::path matrix = dir / "matrix.txt";
  {
    std::ofstream out(matrix);
    out << "4\n"
        << "1.8 0 0 0.2\n"
        << "0 1.0 0.2 0\n"
        << "0 0.2 1.0 0\n"
        << "0.2 0 0 0.2\n";
  }
  const auto res = run_cli("decompose " + matrix.string());
  CHECK(res.exit_code == 0);
  // Dense form of II + 0.4 ZI + 0.4 IZ + 0.2 XX.
  std::istringstream lines(res.output);
  std::string line;
  int found = 0;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    double coeff;
    std::string word;
    REQUIRE((ls >> coeff >> word));
    if (word == "II") CHECK(coeff == doctest::Approx(1.0));
    if (word == "ZI") CHECK(coeff == doctest::Approx(0.4));
    if (word == "IZ") CHECK(coeff == doctest::Approx(0.4));
    if (word == "XX") CHECK(coeff == doctest::Approx(0.2));
    ++found;
  }
  CHECK(found == 4);
}

TEST_CASE("custom problems load Pauli-sum files") {
  const fs::path dir = fresh_dir("custom");
  {
    std::ofstream a(dir / "a.txt");
    a << "1.0 II\n0.4 ZI\n0.4 IZ\n0.2 XX\n";
    std::ofstream b(dir / "b.txt");
    b << "1.0 II\n0.3 ZI\n0.4 IZ\n0.2 ZZ\n";
  }
  {
    std::ofstream cfg(dir / "run.json");
    cfg << R"({"problem": {"custom": {"a_file": "a.txt", "b_file": "b.txt"}},
               "schedules": [{"d_tau": 0.01, "tau_max": 20.0,
                              "initial_theta": [1.5, 0.8, 2.3, 3.1]}],
               "out_dir": ")"
        << (dir / "out").string() << R"("})";
  }
  const auto res = run_cli("solve " + (dir / "run.json").string());
  CHECK(res.exit_code == 0);
  const json summary = json::parse(slurp(dir / "out" / "summary.json"));
  CHECK(std::abs(summary.at("levels")[0].at("final_lambda").get<double>() -
                 0.33326) <= 5e-3);
}

TEST_CASE("the checked-in custom template runs") {
  const fs::path preset = fs::path(QPENCIL_PRESET_DIR) / "custom_template.json";
  REQUIRE(fs::exists(preset));
  const fs::path out = fresh_dir("template_out");
  const auto res =
      run_cli("solve " + preset.string() + " --out-dir " + out.string());
  CHECK(res.exit_code == 0);
}

TEST_CASE("config errors exit with code 2") {
  const fs::path dir = fresh_dir("badconfig");
  SUBCASE("empty config file") {
    std::ofstream(dir / "empty.json") << "";
    CHECK(run_cli("solve " + (dir / "empty.json").string()).exit_code == 2);
  }
  SUBCASE("config without a problem field") {
    std::ofstream(dir / "noproblem.json") << "{}";
    CHECK(run_cli("solve " + (dir / "noproblem.json").string()).exit_code ==
          2);
  }
  SUBCASE("unknown problem name") {
    CHECK(run_cli("solve no_such_problem").exit_code == 2);
  }
  SUBCASE("missing required argument") {
    CHECK(run_cli("solve").exit_code == 2);
  }
  SUBCASE("missing matrix file") {
    CHECK(run_cli("decompose /nonexistent/matrix.txt").exit_code == 2);
  }
}

TEST_CASE("numerical failures exit with code 3") {
  const fs::path dir = fresh_dir("numerical");
  {
    std::ofstream a(dir / "a.txt");
    a << "1.0 II\n0.4 ZI\n0.4 IZ\n0.2 XX\n";
    std::ofstream b(dir / "b.txt");
    b << "1.0 II\n1.0 IX\n1.0 XI\n1.0 XX\n";  // all-ones, rank one
    std::ofstream cfg(dir / "run.json");
    // Start in B's null space: the floor guard trips immediately.
    cfg << R"({"problem": {"custom": {"a_file": "a.txt", "b_file": "b.txt"}},
               "schedules": [{"d_tau": 0.05, "tau_max": 5.0,
                              "initial_theta": [-1.5707963267948966, 0, 0, 0]}],
               "out_dir": ")"
        << (dir / "out").string() << R"("})";
  }
  CHECK(run_cli("solve " + (dir / "run.json").string()).exit_code == 3);
}

TEST_CASE("hydrogen sweep emits the per-x CSV and argmax summary") {
  const fs::path out = fresh_dir("hydrogen");
  const auto res = run_cli(
      "hydrogen --x-min 0.8 --x-max 1.0 --x-step 0.1 --solver oracle "
      "--out-dir " +
      out.string());
  CHECK(res.exit_code == 0);
  const json summary = json::parse(slurp(out / "hydrogen_summary.json"));
  CHECK(std::abs(summary.at("argmax_x").get<double>() - 0.9) <= 1e-9);
  CHECK(std::abs(summary.at("max_polarizability").get<double>() - 4.2665) <=
        1e-3);
  std::ifstream csv(out / "hydrogen_sweep.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "x,g1,g2,P");
  int rows = 0;
  std::string line;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 3);
}
