#pragma once

#include <vector>

#include "lact/geometry.hpp"
#include "lact/types.hpp"

namespace lact {

enum class FbpFilter { RamLak, SheppLogan, Hann };

/// Frequency response (length padded_len, DFT bin order) of the band-limited
/// ramp filter with the chosen apodization window. Exposed for testing.
std::vector<double> ramp_filter_response(int padded_len, double det_spacing, FbpFilter filter);

/// Filtered backprojection. Views are ramp-filtered through a zero-padded
/// DFT of length 2 * next_pow2(n_det) and backprojected with linear detector
/// interpolation; arcs longer than pi are rescaled so rays measured twice are
/// not double counted. Fan data is first rebinned to an equivalent parallel
/// grid (theta = beta + gamma, s = src_to_origin * sin(gamma)). Output pixels
/// outside fov_radius are zeroed.
Image fbp(const Sinogram& sino, const ScanGeometry& geom, FbpFilter filter,
          const GridSpec& grid);

}  // namespace lact
