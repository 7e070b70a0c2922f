#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / ("aimsolve_test_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = std::string(AIMSOLVE_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(out);
  return r;
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / (name + std::to_string(::getpid()));
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve prints the CSV table") {
  const auto r = run("solve --delta 34997/1000 --de-cm1 8940 --levels 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("n,epsilon,eps_hw0,E_cm1,closed_form,abs_diff,k_converged\n", 0) == 0);
  CHECK(r.out.find("\n0,138.4880000000000000,") != std::string::npos);
}

TEST_CASE("numeric oscillator") {
  const auto r = run("solve --problem oscillator --mode numeric --levels 3 --kmax 12 --output json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"n\": 2,") != std::string::npos);
}

TEST_CASE("usage errors exit 64") {
  CHECK(run("solve --delta 35 --molecule 8940,0.616,3.10821,3.5080 --mode numeric").exit_code == 64);
  CHECK(run("solve --delta 35 --levels many").exit_code == 64);
  CHECK(run("solve --delta abc").exit_code == 64);
  CHECK(run("solve --delta 35 --mode sloppy").exit_code == 64);
  CHECK(run("solve --delta 1/4").exit_code == 64);
  CHECK(run("solve").exit_code == 64);
  CHECK(run("frobnicate").exit_code == 64);
}

TEST_CASE("partial convergence exits 2") {
  const auto r = run("solve --delta 34997/1000 --levels 12 --kmax 20");
  CHECK(r.exit_code == 2);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 11);
}

TEST_CASE("compare exit codes") {
  const std::string base = "compare --delta 34997/1000 --levels 25 --reference " + data("li2_table1.csv");
  CHECK(run(base).exit_code == 0);
  CHECK(run(base + " --column morse").exit_code == 3);
  CHECK(run(base + " --column nosuch").exit_code == 64);
  const auto gap = write_temp("aimsolve_ref_gap", "n,aim\n0,-34.4987858673600556\n2,-32.5\n");
  CHECK(run("compare --delta 34997/1000 --levels 3 --reference " + gap.string()).exit_code == 64);
  fs::remove(gap);
  CHECK(run("compare --delta 34997/1000 --levels 3").exit_code == 64);
}

TEST_CASE("config file supplies defaults that flags override") {
  const auto cfg = write_temp("aimsolve_cfg", "delta = \"34997/1000\"\nlevels = 2\noutput = \"json\"\n");
  const auto a = run("solve --config " + cfg.string());
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("\"n\": 1,") != std::string::npos);
  const auto b = run("solve --config " + cfg.string() + " --output csv --levels 1");
  CHECK(b.exit_code == 0);
  CHECK(b.out.rfind("n,epsilon", 0) == 0);
  CHECK(b.out.find("\n1,") == std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("output file") {
  const fs::path p = fs::temp_directory_path() / ("aimsolve_out_" + std::to_string(::getpid()) + ".csv");
  CHECK(run("solve --delta 5 --levels 2 --out " + p.string()).exit_code == 0);
  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,epsilon,eps_hw0,E_cm1,closed_form,abs_diff,k_converged");
  fs::remove(p);
}

TEST_CASE("wavefunction table") {
  const auto r = run("wavefunction --delta 34997/1000 --n 1 --beta 0.616 --xe 3.10821 --points 11");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  CHECK(rows == 11);
}

}  // TEST_SUITE
