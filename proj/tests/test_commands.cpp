#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = "cd " + dir.string() + " && " + ORBITBIF_CLI_PATH + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("orbitbif_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

const char* kRingConfig = R"({
  "version": 1,
  "dimension_N": 2,
  "model": {"f_coefficients": [0.125, -0.25, 0.125], "r0": 1.0},
  "lambda_range": [0.1, 16.0],
  "cutoffs": {"l_max": 3, "m_max": 2, "beta_max": 40.0},
  "output": {"format": "csv", "path": "branches.csv"}
})";

int count_lines(const std::string& text) {
  int n = 0;
  for (const char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("spectrum: disk table and exit 0") {
  const auto dir = fresh_dir("spectrum");
  write_file(dir / "cfg.json", R"({
    "version": 1, "dimension_N": 2, "matrix_A": [[1.0]],
    "lambda_range": [0.0, 1.0],
    "cutoffs": {"l_max": 8, "m_max": 8, "beta_max": 15.0}
  })");
  const auto r = run_cli("spectrum --config cfg.json --out spectrum.csv", dir);
  CHECK(r.code == 0);
  const auto table = slurp(dir / "spectrum.csv");
  CHECK(count_lines(table) == 5);  // header + beta in {0, 3.39, 9.33, 14.68}
  CHECK(table.find("3.3899577") != std::string::npos);
  CHECK(table.find("14.6819706") != std::string::npos);
}

TEST_CASE("spectrum: N=3 with a tiny cutoff has only the zero row") {
  const auto dir = fresh_dir("spectrum3");
  write_file(dir / "cfg.json", R"({
    "version": 1, "dimension_N": 3, "matrix_A": [[1.0]],
    "lambda_range": [0.0, 1.0],
    "cutoffs": {"l_max": 8, "m_max": 8, "beta_max": 1.0}
  })");
  const auto r = run_cli("spectrum --config cfg.json --out spectrum.csv", dir);
  CHECK(r.code == 0);
  CHECK(count_lines(slurp(dir / "spectrum.csv")) == 2);
}

TEST_CASE("malformed configs exit 2 naming the offending field") {
  const auto dir = fresh_dir("badcfg");
  write_file(dir / "unknown.json", R"({
    "version": 1, "dimension_N": 2, "matrix_A": [[1.0]],
    "lambda_range": [0.0, 1.0],
    "cutoffs": {"l_max": 8, "m_max": 8, "beta_max": 15.0},
    "surprise": true
  })");
  auto r = run_cli("spectrum --config unknown.json", dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("surprise") != std::string::npos);

  write_file(dir / "both.json", R"({
    "version": 1, "dimension_N": 2, "matrix_A": [[1.0]],
    "model": {"f_coefficients": [0.125, -0.25, 0.125], "r0": 1.0},
    "lambda_range": [0.0, 1.0],
    "cutoffs": {"l_max": 8, "m_max": 8, "beta_max": 15.0}
  })");
  r = run_cli("spectrum --config both.json", dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("matrix_A") != std::string::npos);

  r = run_cli("spectrum --config does_not_exist.json", dir);
  CHECK(r.code == 2);
}

TEST_CASE("classify: single simple coupling reproduces the rotational-crossing verdict") {
  const auto dir = fresh_dir("classify1");
  write_file(dir / "cfg.json", R"({
    "version": 1, "dimension_N": 2, "matrix_A": [[1.0]],
    "lambda_range": [3.0, 4.0],
    "cutoffs": {"l_max": 8, "m_max": 8, "beta_max": 40.0}
  })");
  const auto r = run_cli("classify --config cfg.json --out classify.csv", dir);
  CHECK(r.code == 0);
  const auto table = slurp(dir / "classify.csv");
  CHECK(count_lines(table) == 2);
  CHECK(table.find(",yes,") != std::string::npos);      // symmetry breaking
  CHECK(table.find("3.38995") != std::string::npos);    // the level
}

TEST_CASE("classify: empty candidate set is exit 0 with a note") {
  const auto dir = fresh_dir("classify_empty");
  write_file(dir / "cfg.json", R"({
    "version": 1, "dimension_N": 2, "matrix_A": [[1.0]],
    "lambda_range": [0.5, 3.0],
    "cutoffs": {"l_max": 8, "m_max": 8, "beta_max": 40.0}
  })");
  const auto r = run_cli("classify --config cfg.json --out classify.csv", dir);
  CHECK(r.code == 0);
  CHECK(count_lines(slurp(dir / "classify.csv")) == 1);  // header only
  CHECK(r.err.find("no candidate levels") != std::string::npos);
}

TEST_CASE("classify: insufficient cutoff is a numeric failure (exit 3)") {
  const auto dir = fresh_dir("classify_cutoff");
  write_file(dir / "cfg.json", R"({
    "version": 1, "dimension_N": 2, "matrix_A": [[1.0]],
    "lambda_range": [0.1, 100.0],
    "cutoffs": {"l_max": 8, "m_max": 8, "beta_max": 40.0}
  })");
  const auto r = run_cli("classify --config cfg.json", dir);
  CHECK(r.code == 3);
  CHECK(r.err.find("beta_max") != std::string::npos);
}

TEST_CASE("verify: agreement run, determinism, cache round trip") {
  const auto dir = fresh_dir("verify");
  write_file(dir / "cfg.json", kRingConfig);
  const auto first = run_cli("verify --config cfg.json --cache roots.json", dir);
  CHECK(first.code == 0);
  CHECK(first.out.find("verdict: agreement") != std::string::npos);
  const auto branches = slurp(dir / "branches.csv");
  CHECK(branches.find("bifurcating") != std::string::npos);
  CHECK(fs::exists(dir / "branches.csv.states.json"));
  CHECK(fs::exists(dir / "roots.json"));

  // Same config, warm cache, different thread count: byte-identical CSV.
  const auto again = run_cli("verify --config cfg.json --cache roots.json --threads 4", dir);
  CHECK(again.code == 0);
  CHECK(slurp(dir / "branches.csv") == branches);
}

TEST_CASE("verify: model-free config is a config error") {
  const auto dir = fresh_dir("verify_nomodel");
  write_file(dir / "cfg.json", R"({
    "version": 1, "dimension_N": 2, "matrix_A": [[1.0]],
    "lambda_range": [0.1, 4.0],
    "cutoffs": {"l_max": 3, "m_max": 2, "beta_max": 40.0}
  })");
  const auto r = run_cli("verify --config cfg.json --out b.csv", dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("model") != std::string::npos);
}

TEST_CASE("verify: no candidates in range gives an empty branch table") {
  const auto dir = fresh_dir("verify_empty");
  // f''(r0) < 0: the nonzero coupling eigenvalue is negative, all candidate
  // levels sit on the negative axis.
  write_file(dir / "cfg.json", R"({
    "version": 1, "dimension_N": 2,
    "model": {"f_coefficients": [-0.125, 0.25, -0.125], "r0": 1.0},
    "lambda_range": [0.1, 5.0],
    "cutoffs": {"l_max": 3, "m_max": 2, "beta_max": 40.0},
    "output": {"format": "csv", "path": "branches.csv"}
  })");
  const auto r = run_cli("verify --config cfg.json", dir);
  CHECK(r.code == 0);
  const auto branches = slurp(dir / "branches.csv");
  CHECK(branches.find("bifurcating") == std::string::npos);
  CHECK(branches.find("trivial") != std::string::npos);
}

TEST_CASE("diagram: series from a verify run, missing input is exit 2") {
  const auto dir = fresh_dir("diagram");
  write_file(dir / "cfg.json", kRingConfig);
  auto r = run_cli("diagram --config cfg.json --out diagram.csv", dir);
  CHECK(r.code == 2);  // nothing to read yet

  REQUIRE(run_cli("verify --config cfg.json", dir).code == 0);
  r = run_cli("diagram --config cfg.json --out diagram.csv", dir);
  CHECK(r.code == 0);
  const auto table = slurp(dir / "diagram.csv");
  CHECK(table.rfind("series,kind,lambda,measure,isotropy\n", 0) == 0);
  CHECK(table.find("SO(2)") != std::string::npos);
  CHECK(table.find("Z1") != std::string::npos);  // the degree-1 branch
  // 4 series: trivial + one branch per detected level.
  std::set<std::string> series;
  std::istringstream lines(table);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) series.insert(line.substr(0, line.find(',')));
  CHECK(series.size() == 4);
}

TEST_CASE("diagram: optional SVG rendering") {
  const auto dir = fresh_dir("diagram_svg");
  std::string cfg = kRingConfig;
  cfg.replace(cfg.find("\"path\": \"branches.csv\""), std::string("\"path\": \"branches.csv\"").size(),
              "\"path\": \"branches.csv\", \"svg_path\": \"diagram.svg\"");
  write_file(dir / "cfg.json", cfg);
  REQUIRE(run_cli("verify --config cfg.json", dir).code == 0);
  REQUIRE(run_cli("diagram --config cfg.json --out diagram.csv", dir).code == 0);
  const auto svg = slurp(dir / "diagram.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}
