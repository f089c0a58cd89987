#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string cli = TDOSC_CLI_PATH;

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "tdosc_cli_test";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("ermakov quench grid hits the closed-form point") {
  const auto dir = scratch();
  const auto cfg = dir / "ermakov.json";
  const auto out = dir / "ermakov.csv";
  write_file(cfg, R"({
    "k0": {"kind": "quench", "initial": 1.0, "final": 4.0, "t_q": 0.0},
    "grid": {"t_start": 0.0, "t_end": 3.14159265358979323846, "steps": 9}
  })");
  CHECK(run("ermakov --config " + cfg.string() + " --out " + out.string()) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == std::vector<std::string>{"t", "b", "bdot", "omega_eff"});
  // Row 3 sits at t = pi/4 where b = 1/2 for the 1 -> 2 quench.
  CHECK(std::abs(std::stod(rows[3][1]) - 0.5) <= 1e-8);
  CHECK(std::abs(std::stod(rows[2][1]) - 1.0) > 1e-3);  // not the constant case
}

TEST_CASE("constant frequency keeps b = 1 in every row") {
  const auto dir = scratch();
  const auto cfg = dir / "const.json";
  const auto out = dir / "const.csv";
  write_file(cfg, R"({"k0": 2.5, "grid": {"t_end": 4.0, "steps": 11}})");
  CHECK(run("ermakov --config " + cfg.string() + " --out " + out.string()) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 12);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(std::abs(std::stod(rows[i][1]) - 1.0) <= 1e-10);
}

TEST_CASE("negative t_start is a usage error") {
  const auto dir = scratch();
  const auto cfg = dir / "bad.json";
  write_file(cfg, R"({"k0": 1.0, "grid": {"t_start": -1.0, "t_end": 1.0, "steps": 5}})");
  CHECK(run("ermakov --config " + cfg.string()) != 0);
  CHECK(run("nonsense-command") != 0);
}

TEST_CASE("uncertainty table for the static two-oscillator chain") {
  const auto dir = scratch();
  const auto cfg = dir / "unc.json";
  const auto out = dir / "unc.csv";
  write_file(cfg, R"({
    "N": 2, "k0": 1.0, "J": 1.0, "excitation": [0, 0],
    "grid": {"t_end": 1.0, "steps": 5}
  })");
  CHECK(run("uncertainty --config " + cfg.string() + " --out " + out.string()) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 11);  // header + 5 times x 2 oscillators
  CHECK(rows[0] == std::vector<std::string>{"t", "j", "var_x", "var_p", "sum_rule_dev_x",
                                            "sum_rule_dev_p"});
  const double expect = 0.25 * (1.0 + 1.0 / std::sqrt(3.0));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::abs(std::stod(rows[i][2]) - expect) <= 1e-10);
    CHECK(std::abs(std::stod(rows[i][4])) <= 1e-12);
  }
}

TEST_CASE("three-oscillator deviation column flags (0,1,0) and clears (0,1,1)") {
  const auto dir = scratch();
  const auto out = dir / "unc3.csv";
  auto config = [&](const std::string& tag, const std::string& exc) {
    const auto cfg = dir / ("unc3_" + tag + ".json");
    write_file(cfg, R"({"N": 3, "k0": 1.0, "J": 1.0, "excitation": )" + exc +
                        R"(, "grid": {"t_end": 0.5, "steps": 2}})");
    return cfg;
  };
  CHECK(run("uncertainty --config " + config("bad", "[0,1,0]").string() + " --out " +
            out.string()) == 0);
  auto rows = parse_csv(slurp(out));
  double max_dev = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    max_dev = std::max(max_dev, std::abs(std::stod(rows[i][4])));
  CHECK(max_dev > 1e-3);

  CHECK(run("uncertainty --config " + config("good", "[0,1,1]").string() + " --out " +
            out.string()) == 0);
  rows = parse_csv(slurp(out));
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(std::abs(std::stod(rows[i][4])) <= 1e-12);
}

TEST_CASE("general-3 uncertainty and the degenerate-coupling error") {
  const auto dir = scratch();
  const auto cfg = dir / "gen3.json";
  const auto out = dir / "gen3.csv";
  write_file(cfg, R"({
    "k0": 1.0, "J12": 1.0, "J13": 2.0, "J23": 3.0, "excitation": [0, 0, 0],
    "grid": {"t_end": 0.5, "steps": 3}
  })");
  CHECK(run("uncertainty --config " + cfg.string() + " --out " + out.string()) == 0);
  CHECK(parse_csv(slurp(out)).size() == 10);

  const auto bad = dir / "gen3_degenerate.json";
  write_file(bad, R"({"k0": 1.0, "J12": 1.0, "J13": 1.0, "J23": 1.0})");
  CHECK(run("uncertainty --config " + bad.string()) != 0);
}

TEST_CASE("table1 reports the gamma1 coefficients") {
  const auto dir = scratch();
  const auto out = dir / "table1.csv";
  CHECK(run("table1 --format csv --out " + out.string()) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() > 1);
  CHECK(rows[0] == std::vector<std::string>{"name", "k", "coefficient"});
  CHECK(rows[1][0] == "gamma1");
  CHECK(std::abs(std::stod(rows[1][2]) - 0.75) <= 1e-8);
  CHECK(std::abs(std::stod(rows[2][2]) + 1.0) <= 1e-8);

  const auto jout = dir / "table1.json";
  CHECK(run("table1 --out " + jout.string()) == 0);
  const auto text = slurp(jout);
  CHECK(text.find("\"gamma3\"") != std::string::npos);
  CHECK(text.find("\"delta3\"") != std::string::npos);
  CHECK(text.find("self_check_rel_error") != std::string::npos);
}

TEST_CASE("fig1 series columns and anchors") {
  const auto dir = scratch();
  const auto out = dir / "fig1.csv";
  CHECK(run("fig1 --steps 20 --out " + out.string()) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 21);
  CHECK(rows[0] == std::vector<std::string>{"t", "z", "gamma1", "gamma2", "gamma3", "delta1",
                                            "delta2", "delta3"});
  CHECK(std::abs(std::stod(rows[1][1]) - 0.232051) <= 1e-5);
  CHECK(std::abs(std::stod(rows[1][2]) - 0.51795) <= 1e-5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double g1 = std::stod(rows[i][2]), g2 = std::stod(rows[i][3]),
                 g3 = std::stod(rows[i][4]);
    CHECK(g1 >= g2 - 1e-12);
    CHECK(g2 >= g3 - 1e-12);
    for (int n = 0; n < 3; ++n)
      CHECK(std::stod(rows[i][5 + n]) <= std::stod(rows[i][2 + n]) + 1e-12);
  }
}

TEST_CASE("identical configs give byte-identical output") {
  const auto dir = scratch();
  const auto a = dir / "det_a.csv";
  const auto b = dir / "det_b.csv";
  CHECK(run("fig1 --steps 10 --out " + a.string()) == 0);
  CHECK(run("fig1 --steps 10 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("wigner grid export") {
  const auto dir = scratch();
  const auto cfg = dir / "wigner.json";
  const auto out = dir / "wigner.csv";
  write_file(cfg, R"({
    "k0": 1.0, "n": 0,
    "x": {"min": 0.0, "max": 1.0, "steps": 2},
    "p": {"min": 0.0, "max": 1.0, "steps": 2}
  })");
  CHECK(run("wigner --config " + cfg.string() + " --out " + out.string()) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"x", "p", "w"});
  CHECK(std::abs(std::stod(rows[1][2]) - 1.0 / M_PI) <= 1e-12);
}

TEST_CASE("verify suite passes by default and fails at 1e-15") {
  const auto dir = scratch();
  const auto out = dir / "verify.json";
  CHECK(run("verify --out " + out.string()) == 0);
  const auto text = slurp(out);
  CHECK(text.find("\"all_pass\": true") != std::string::npos);

  CHECK(run("verify --tol 1e-15 --out " + out.string()) != 0);
  CHECK(slurp(out).find("\"all_pass\": false") != std::string::npos);

  // Name filter runs a single check.
  const auto one = dir / "verify_one.json";
  CHECK(run("verify --check ermakov_quench --out " + one.string()) == 0);
  const auto single = slurp(one);
  CHECK(single.find("ermakov_quench") != std::string::npos);
  CHECK(single.find("single_purity") == std::string::npos);
}
