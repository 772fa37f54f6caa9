#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "wb/cli.hpp"
#include "wb/errors.hpp"
#include "wb/evolution.hpp"
#include "wb/experiments.hpp"
#include "wb/io.hpp"
#include "wb/solitary.hpp"

using namespace wb;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wb_cli_tests_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(std::vector<std::string> args) {
  std::vector<const char*> argv{"wb"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_CASE("profile CSV round trip is lossless") {
  const auto dir = fresh_dir("profile");
  auto g = make_grid(64, 17.0);
  auto f = oracles::random_field(g, 3);
  io::write_profile_csv(dir / "f.csv", f);
  RealField back = io::read_profile_csv(dir / "f.csv");
  CHECK(same_grid(back, f));
  CHECK(back.values == f.values);

  std::ofstream(dir / "bad.csv") << "x,value\n0,1\n";
  CHECK_THROWS_AS(io::read_profile_csv(dir / "bad.csv"), IoError);
  CHECK_THROWS_AS(io::read_profile_csv(dir / "missing.csv"), IoError);
}

TEST_CASE("reference CSV writer emits what load_reference ingests") {
  const auto dir = fresh_dir("refio");
  auto g = make_grid(512, 128.0);
  SolitonResult sol = petviashvili_solve(1.2, g, std::nullopt, 1e-10, 400);
  REQUIRE(sol.converged);
  io::write_reference_csv(dir / "ref.csv", reference_from_soliton(sol));
  CHECK(fs::exists(dir / "ref.json"));
  ReferenceWave ref = load_reference(dir / "ref.csv");
  CHECK(ref.c == 1.2);
  CHECK(ref.x.size() == static_cast<std::size_t>(g->n));
  WaveState s = build_initial(ref, g);
  CHECK(relative_difference(sol.eta, s.eta) < 1e-12);
}

TEST_CASE("soliton bundle and sweep CSV") {
  const auto dir = fresh_dir("bundle");
  auto g = make_grid(512, 128.0);
  SolitonResult sol = petviashvili_solve(1.2, g, std::nullopt, 1e-10, 400);
  REQUIRE(sol.converged);
  io::write_soliton_bundle(dir / "sol", sol);
  for (const char* f : {"eta.csv", "vel.csv", "soliton.json", "reference.csv",
                        "reference.json"})
    CHECK(fs::exists(dir / "sol" / f));

  const std::string js = slurp(dir / "sol" / "soliton.json");
  CHECK(js.find("\"c\"") != std::string::npos);
  CHECK(js.find("\"residual\"") != std::string::npos);
  CHECK(js.find("\"iterations\"") != std::string::npos);

  std::vector<SolitonResult> sweep{sol};
  io::write_sweep_csv(dir / "sweep.csv", sweep);
  std::istringstream is(slurp(dir / "sweep.csv"));
  std::string header, row;
  std::getline(is, header);
  CHECK(header == "c,amplitude,residual,iterations");
  std::getline(is, row);
  CHECK(std::stod(row.substr(0, row.find(','))) == 1.2);
}

TEST_CASE("cmd_simulate: constant data, demo pulse, exit codes") {
  const auto dir = fresh_dir("simulate");

  cli::RunConfig cfg;
  cfg.n = 256;
  cfg.L = 64.0;
  cfg.t_end = 1.0;
  cfg.amplitude = 0.0; // constant (zero) initial data
  cfg.out_dir = (dir / "const").string();
  CHECK(cli::cmd_simulate(cfg) == cli::exit_ok);
  {
    std::istringstream is(slurp(dir / "const" / "diagnostics.csv"));
    std::string line;
    std::getline(is, line); // header
    double h_first = -1;
    bool first = true;
    while (std::getline(is, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      const double h = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      if (first) {
        h_first = h;
        first = false;
      }
      CHECK(h == h_first);
    }
  }

  // gaussian demo: Hamiltonian drift < 1e-8 recorded in the CSV
  cfg.amplitude = 0.2;
  cfg.width = 4.0;
  cfg.t_end = 10.0;
  cfg.out_dir = (dir / "demo").string();
  CHECK(cli::cmd_simulate(cfg) == cli::exit_ok);
  {
    std::istringstream is(slurp(dir / "demo" / "diagnostics.csv"));
    std::string line;
    std::getline(is, line);
    std::vector<double> hams;
    while (std::getline(is, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      hams.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    REQUIRE(hams.size() >= 2);
    CHECK(std::abs(hams.back() - hams.front()) / std::abs(hams.front()) < 1e-8);
  }

  // dt above the stability bound: config error, no partial output
  cfg.dt = 10.0;
  cfg.out_dir = (dir / "never").string();
  CHECK_THROWS_AS(cli::cmd_simulate(cfg), std::invalid_argument);
  CHECK_FALSE(fs::exists(dir / "never"));
}

TEST_CASE("CLI end to end: soliton -> compare, profiles as initial data") {
  const auto dir = fresh_dir("endtoend");
  const std::string out_sol = (dir / "sol").string();

  CHECK(run({"soliton", "--c", "1.2", "--n", "512", "--L", "128", "--out",
             out_sol}) == cli::exit_ok);
  CHECK(fs::exists(dir / "sol" / "reference.csv"));

  // the emitted reference feeds compare
  CHECK(run({"compare", "--reference", (dir / "sol" / "reference.csv").string(),
             "--n", "512", "--L", "128", "--t-end", "5", "--out",
             (dir / "cmp").string()}) == cli::exit_ok);
  const std::string report = slurp(dir / "cmp" / "report.json");
  for (const char* key : {"\"d\"", "\"c_fitted\"", "\"tail_mass\"", "\"t\"",
                          "\"grid\"", "\"dt\""})
    CHECK(report.find(key) != std::string::npos);

  // the emitted profiles feed simulate
  CHECK(run({"simulate", "--init", "profile", "--eta",
             (dir / "sol" / "eta.csv").string(), "--vel",
             (dir / "sol" / "vel.csv").string(), "--t-end", "1", "--out",
             (dir / "sim").string()}) == cli::exit_ok);
  CHECK(fs::exists(dir / "sim" / "eta_final.csv"));
}

TEST_CASE("CLI: sweep writes one row per point") {
  const auto dir = fresh_dir("sweep");
  CHECK(run({"sweep", "--c-min", "1.05", "--c-max", "1.15", "--steps", "3",
             "--n", "512", "--L", "128", "--out", dir.string()}) ==
        cli::exit_ok);
  std::istringstream is(slurp(dir / "sweep.csv"));
  std::string line;
  int rows = -1; // header
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("CLI: determinism, config file, error exit codes") {
  const auto dir = fresh_dir("determinism");

  auto simulate_into = [&](const std::string& sub) {
    return run({"simulate", "--n", "256", "--L", "64", "--t-end", "2",
                "--seed", "99", "--out", (dir / sub).string()});
  };
  CHECK(simulate_into("a") == cli::exit_ok);
  CHECK(simulate_into("b") == cli::exit_ok);
  for (const char* f : {"diagnostics.csv", "eta_final.csv", "vel_final.csv"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));

  // flat key=value config file reproduces the flag run
  std::ofstream(dir / "run.cfg") << "n=256\nL=64\nt-end=2\nseed=99\nout="
                                 << (dir / "c").string() << "\n";
  CHECK(run({"simulate", "--config", (dir / "run.cfg").string()}) ==
        cli::exit_ok);
  CHECK(slurp(dir / "a" / "diagnostics.csv") ==
        slurp(dir / "c" / "diagnostics.csv"));

  // flags win over the config file
  std::ofstream(dir / "run2.cfg") << "n=256\nL=64\nt-end=2\nout="
                                  << (dir / "d1").string() << "\n";
  CHECK(run({"simulate", "--config", (dir / "run2.cfg").string(), "--out",
             (dir / "d2").string()}) == cli::exit_ok);
  CHECK_FALSE(fs::exists(dir / "d1"));
  CHECK(fs::exists(dir / "d2" / "diagnostics.csv"));

  // exit codes
  CHECK(run({"simulate", "--n", "255", "--out", (dir / "x").string()}) ==
        cli::exit_config);
  CHECK(run({"simulate", "--dt", "99", "--n", "256", "--L", "64", "--out",
             (dir / "y").string()}) == cli::exit_config);
  CHECK(run({"soliton", "--c", "0.5", "--out", (dir / "z").string()}) ==
        cli::exit_config);
  CHECK(run({"soliton", "--c", "1.2", "--n", "512", "--L", "128", "--max-iter",
             "2", "--out", (dir / "w").string()}) == cli::exit_nonconvergence);
  CHECK(run({"compare", "--reference", (dir / "absent.csv").string(), "--n",
             "256", "--L", "64", "--out", (dir / "v").string()}) ==
        cli::exit_io);
  CHECK(run({"--no-such-flag"}) == cli::exit_config);
  CHECK(run({}) == cli::exit_config);
  CHECK(run({"simulate", "--n", "128", "--L", "32", "--amplitude", "150",
             "--width", "1", "--t-end", "50", "--out",
             (dir / "blow").string()}) == cli::exit_blowup);
}

TEST_CASE("CLI: validate passes on a fresh build") {
  CHECK(run({"validate"}) == cli::exit_ok);
}
