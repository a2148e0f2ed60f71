#pragma once

#include "lact/types.hpp"

namespace lact {

/// Forward-difference gradient on a unit-spacing grid with Neumann boundary:
/// the last column (resp. row) of the horizontal (resp. vertical) component
/// is zero. Operator norm of the stacked pair is bounded by sqrt(8).
VectorField grad(const Image& img);

/// Negative adjoint of grad: <grad x, v> == -<x, divergence(v)> exactly.
Image divergence(const VectorField& v);

}  // namespace lact
