#pragma once

#include <cstdint>
#include <string>

namespace wb::cli {

// Exit codes: 0 ok, 2 config, 3 blow-up, 4 non-convergence, 5 I/O,
// 1 anything else (including failed validate checks).
enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_config = 2,
  exit_blowup = 3,
  exit_nonconvergence = 4,
  exit_io = 5,
};

struct RunConfig {
  int n = 2048;
  double L = 256.0;
  double dt = 0.0; // 0: use cfl/4 of the stability bound
  double cfl = 1.0;
  double t_end = 10.0;
  std::string out_dir = "out";
  int sample_every = 10;
  double tol = 1e-10;
  int max_iter = 500;
  std::uint64_t seed = 1234;
  bool parallel = false;

  // simulate
  std::string init = "gaussian"; // gaussian | profile | reference
  double amplitude = 0.2;
  double width = 4.0;
  std::string eta_file;
  std::string vel_file;

  // soliton / sweep / compare
  double c = 1.25;
  double c_min = 1.01;
  double c_max = 1.5;
  int steps = 50;
  std::string reference_file;
};

int cmd_simulate(const RunConfig& cfg);
int cmd_soliton(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);
int cmd_validate();

// Full command-line front end (subcommands simulate | soliton | sweep |
// compare | validate); returns the process exit code.
int run_cli(int argc, const char* const* argv);

} // namespace wb::cli
