#include "wb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "wb/errors.hpp"

namespace wb::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  return os;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_profile_csv(const std::filesystem::path& path, const RealField& f) {
  auto os = open_out(path);
  os << "x,value\n";
  for (int j = 0; j < f.size(); ++j)
    os << format_double(f.grid->node[j]) << ',' << format_double(f.values[j])
       << '\n';
}

RealField read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,value", 0) != 0)
    throw IoError("profile " + path.string() + ": expected header 'x,value'");

  std::vector<double> xs, vals;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw IoError("profile " + path.string() + ": bad row " + std::to_string(row));
    try {
      xs.push_back(std::stod(a));
      vals.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw IoError("profile " + path.string() + ": unparsable number at row " +
                    std::to_string(row));
    }
  }
  const int n = static_cast<int>(xs.size());
  if (n < 8 || n % 2 != 0)
    throw IoError("profile " + path.string() + ": needs an even number of rows >= 8");
  const double dx = xs[1] - xs[0];
  const double L = dx * n;
  GridPtr grid;
  try {
    grid = make_grid(n, L);
  } catch (const std::exception& e) {
    throw IoError("profile " + path.string() + ": " + e.what());
  }
  for (int j = 0; j < n; ++j) {
    if (std::abs(xs[j] - grid->node[j]) > 1e-9 * L)
      throw IoError("profile " + path.string() +
                    ": x column is not the uniform grid on [-L/2, L/2)");
  }
  RealField f(grid);
  f.values = std::move(vals);
  return f;
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const DiagnosticsRecord> trace) {
  auto os = open_out(path);
  wb::write_diagnostics_csv(os, trace);
}

void write_sweep_csv(const std::filesystem::path& path,
                     std::span<const SolitonResult> sweep) {
  auto os = open_out(path);
  os << "c,amplitude,residual,iterations\n";
  for (const auto& s : sweep)
    os << format_double(s.c) << ',' << format_double(s.amplitude) << ','
       << format_double(s.residual) << ',' << s.iterations << '\n';
}

void write_reference_csv(const std::filesystem::path& path,
                         const ReferenceWave& ref) {
  {
    auto os = open_out(path);
    os << "# c=" << format_double(ref.c) << '\n';
    os << "x,eta0,u1,u2\n";
    for (std::size_t i = 0; i < ref.x.size(); ++i)
      os << format_double(ref.x[i]) << ',' << format_double(ref.eta0[i]) << ','
         << format_double(ref.u1[i]) << ',' << format_double(ref.u2[i]) << '\n';
  }
  std::filesystem::path sidecar = path;
  sidecar.replace_extension(".json");
  auto os = open_out(sidecar);
  os << nlohmann::json{{"c", ref.c}}.dump(2) << '\n';
}

void write_soliton_bundle(const std::filesystem::path& dir,
                          const SolitonResult& sol) {
  std::filesystem::create_directories(dir);
  write_profile_csv(dir / "eta.csv", sol.eta);
  write_profile_csv(dir / "vel.csv", sol.vel);
  {
    auto os = open_out(dir / "soliton.json");
    os << nlohmann::json{{"c", sol.c},
                         {"n", sol.eta.grid->n},
                         {"L", sol.eta.grid->length},
                         {"residual", sol.residual},
                         {"iterations", sol.iterations}}
              .dump(2)
       << '\n';
  }
  write_reference_csv(dir / "reference.csv", reference_from_soliton(sol));
}

void write_report_json(const std::filesystem::path& path,
                       const ComparisonReport& report, const Grid& grid,
                       double dt) {
  auto os = open_out(path);
  os << nlohmann::json{{"d", report.d},
                       {"c_fitted", report.c_fitted},
                       {"tail_mass", report.tail_mass},
                       {"t", report.t},
                       {"grid", {{"n", grid.n}, {"L", grid.length}}},
                       {"dt", dt}}
            .dump(2)
     << '\n';
}

} // namespace wb::io
