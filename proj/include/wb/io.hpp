#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "wb/evolution.hpp"
#include "wb/experiments.hpp"
#include "wb/field.hpp"
#include "wb/solitary.hpp"

// File formats. All numbers are written with 17 significant digits so that
// doubles round-trip losslessly, and every CSV the tool emits can be read
// back (profiles as initial conditions, references for compare).

namespace wb::io {

std::string format_double(double v);

// two-column CSV, header `x,value`
void write_profile_csv(const std::filesystem::path& path, const RealField& f);

// Reconstructs the grid from the x column (uniform spacing, even n >= 8,
// domain [-L/2, L/2)). Throws IoError on format or grid violations.
RealField read_profile_csv(const std::filesystem::path& path);

void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const DiagnosticsRecord> trace);

// header `c,amplitude,residual,iterations`
void write_sweep_csv(const std::filesystem::path& path,
                     std::span<const SolitonResult> sweep);

// header `x,eta0,u1,u2` plus a `{"c": ...}` sidecar next to it
void write_reference_csv(const std::filesystem::path& path,
                         const ReferenceWave& ref);

// eta.csv, vel.csv, soliton.json ({c, n, L, residual, iterations}) and a
// synthetic reference.csv/.json pair that compare can re-ingest
void write_soliton_bundle(const std::filesystem::path& dir,
                          const SolitonResult& sol);

// {d, c_fitted, tail_mass, t, grid:{n,L}, dt}
void write_report_json(const std::filesystem::path& path,
                       const ComparisonReport& report, const Grid& grid,
                       double dt);

} // namespace wb::io
