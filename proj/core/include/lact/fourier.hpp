#pragma once

#include "lact/types.hpp"

namespace lact {

/// Unitary 2D DFT of a real grid with the spectrum re-centered so the DC bin
/// sits at (height/2, width/2). Satisfies Parseval and exact round-tripping
/// with inverse_centered_dft2.
ComplexGrid centered_dft2(const Image& img);

/// Inverse of centered_dft2 (inverse shift, then inverse transform). The
/// residual imaginary part must stay below 1e-9 * ||g||; it is discarded when
/// negligible and raises NonNegligibleImaginary otherwise.
Image inverse_centered_dft2(const ComplexGrid& grid);

}  // namespace lact
