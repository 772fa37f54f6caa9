#pragma once

#include <complex>
#include <functional>
#include <string>

#include "wb/field.hpp"

namespace wb {

// Fourier multiplier: acts on a field as fhat(k) -> m(k) fhat(k). Every
// shipped symbol satisfies m(-k) = conj(m(k)) and is finite at k = 0
// (removable singularities are filled with their limits).
struct MultiplierSymbol {
  std::string name;
  std::function<std::complex<double>(double)> eval;

  std::complex<double> operator()(double k) const { return eval(k); }
};

MultiplierSymbol symbol_tanh();  // tanh(k)
MultiplierSymbol symbol_K();     // tanh(k)/k, 1 at k = 0
MultiplierSymbol symbol_Kinv();  // k/tanh(k), 1 at k = 0
MultiplierSymbol symbol_absk();  // |k|
MultiplierSymbol symbol_deriv(); // i k  (d/dx)

// Applies the multiplier and returns the real synthesis. The Nyquist bin has
// no conjugate partner and folds +k_N and -k_N together, so it is scaled by
// (m(k_N) + m(-k_N))/2; odd symbols therefore vanish there. Throws if the
// imaginary residue of the synthesis exceeds 1e-12 of the input norm (a
// non-Hermitian symbol).
RealField apply_multiplier(const MultiplierSymbol& sym, const RealField& f);

// 2/3-rule projection: zeroes coefficients with 3|m_j| > n.
RealField dealias(const RealField& f);

// Same projection applied in place to a spectrum in FFT bin order.
void dealias_spectrum(std::vector<std::complex<double>>& spectrum,
                      const Grid& grid);

} // namespace wb
