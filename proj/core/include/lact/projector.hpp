#pragma once

#include "lact/geometry.hpp"
#include "lact/types.hpp"

namespace lact {

/// Joseph-style line integrals: each ray marches along its dominant axis and
/// linearly interpolates between the two neighboring pixels along the other
/// axis, weighted by the path length per step. Pixels whose centers fall
/// outside the fov_radius circle contribute zero.
Sinogram forward_project(const Image& img, const ScanGeometry& geom);

/// Exact transpose of forward_project on the given grid: the same rays and
/// interpolation weights, scattering instead of gathering.
Image back_project(const Sinogram& sino, const ScanGeometry& geom, const GridSpec& grid);

}  // namespace lact
