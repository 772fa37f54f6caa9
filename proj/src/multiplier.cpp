#include "wb/multiplier.hpp"

#include <cmath>
#include <stdexcept>

#include "wb/fourier.hpp"

namespace wb {

namespace {

double tanh_over_k(double k) {
  if (k == 0.0) return 1.0;
  return std::tanh(k) / k;
}

} // namespace

MultiplierSymbol symbol_tanh() {
  return {"tanh", [](double k) { return std::complex<double>(std::tanh(k), 0.0); }};
}

MultiplierSymbol symbol_K() {
  return {"K", [](double k) { return std::complex<double>(tanh_over_k(k), 0.0); }};
}

MultiplierSymbol symbol_Kinv() {
  return {"Kinv", [](double k) { return std::complex<double>(1.0 / tanh_over_k(k), 0.0); }};
}

MultiplierSymbol symbol_absk() {
  return {"absk", [](double k) { return std::complex<double>(std::abs(k), 0.0); }};
}

MultiplierSymbol symbol_deriv() {
  return {"deriv", [](double k) { return std::complex<double>(0.0, k); }};
}

RealField apply_multiplier(const MultiplierSymbol& sym, const RealField& f) {
  const Grid& g = *f.grid;
  const int n = g.n;
  auto spec = forward_transform(f);
  for (int j = 0; j < n; ++j) {
    const double k = g.wavenumber[j];
    std::complex<double> m = sym(k);
    if (j == n / 2) m = 0.5 * (m + sym(-k));
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
      throw std::domain_error("apply_multiplier: symbol '" + sym.name +
                              "' is not finite at k = " + std::to_string(k));
    spec[j] *= m;
  }
  auto full = synthesize_complex(spec, g);

  double imag_sq = 0.0, in_sq = 0.0;
  for (int j = 0; j < n; ++j) {
    imag_sq += full[j].imag() * full[j].imag();
    in_sq += f.values[j] * f.values[j];
  }
  if (std::sqrt(imag_sq) > 1e-12 * std::sqrt(in_sq) + 1e-300)
    throw std::domain_error("apply_multiplier: symbol '" + sym.name +
                            "' produced a complex field (not Hermitian)");

  RealField out(f.grid);
  for (int j = 0; j < n; ++j) out.values[j] = full[j].real();
  return out;
}

void dealias_spectrum(std::vector<std::complex<double>>& spectrum,
                      const Grid& grid) {
  const int n = grid.n;
  for (int j = 0; j < n; ++j) {
    if (3 * std::abs(grid.freq_index(j)) > n) spectrum[j] = 0.0;
  }
}

RealField dealias(const RealField& f) {
  auto spec = forward_transform(f);
  dealias_spectrum(spec, *f.grid);
  return backward_transform(spec, f.grid);
}

} // namespace wb
