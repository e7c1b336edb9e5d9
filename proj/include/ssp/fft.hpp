#pragma once

#include "ssp/grid.hpp"

namespace ssp {

// Per-channel 2D discrete Fourier transform with unitary normalization
// (1/sqrt(HW) in each direction, so Parseval holds with factor 1) and the DC
// bin moved to (height/2, width/2). Arbitrary sizes are supported: power-of-two
// lengths use an iterative radix-2 transform, everything else goes through
// Bluestein's chirp-z reduction. Rows and columns are transformed in parallel;
// every output bin is computed independently, so results do not depend on the
// thread count.
Spectrum fft2(const Grid& g);

// Inverse of fft2. The imaginary residue is discarded only when its infinity
// norm is below 1e-9; anything larger signals a non-Hermitian spectrum and
// raises an error.
Grid ifft2(const Spectrum& s);

namespace ref {

// Direct O(N^2) DFT, serial. Reference implementation kept for tests and the
// kernel benchmark; same normalization and layout as fft2/ifft2.
Spectrum dft2(const Grid& g);
Grid idft2(const Spectrum& s);

}  // namespace ref

}  // namespace ssp
