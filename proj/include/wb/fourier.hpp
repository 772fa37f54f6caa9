#pragma once

#include <complex>
#include <span>
#include <vector>

#include "wb/field.hpp"
#include "wb/grid.hpp"

namespace wb {

// Spectral coefficients are true Fourier coefficients on [-L/2, L/2):
//   f(x_j) = sum_m fhat_m exp(i k_m x_j),
// stored in FFT bin order (index j holds frequency m_j). A real field has a
// Hermitian spectrum, fhat_{-m} = conj(fhat_m). backward(forward(f)) == f to
// round-off for every admissible grid size.
std::vector<std::complex<double>> forward_transform(const RealField& f);

// Inverse of forward_transform; the imaginary part of the synthesis is
// discarded. Throws on a size mismatch with the grid.
RealField backward_transform(std::span<const std::complex<double>> spectrum,
                             const GridPtr& grid);

// Full complex synthesis, for callers that need the imaginary residue.
std::vector<std::complex<double>> synthesize_complex(
    std::span<const std::complex<double>> spectrum, const Grid& grid);

// g(x) = f(x - delta): the profile translated right by delta (periodic).
RealField shift_field(const RealField& f, double delta);

} // namespace wb
