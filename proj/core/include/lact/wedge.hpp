#pragma once

#include "lact/geometry.hpp"
#include "lact/types.hpp"

namespace lact {

/// Binary mask selecting the unmeasured spectral wedge of a limited-angle
/// scan. A view at angle theta samples the central frequency line
/// perpendicular to its ray direction, so a bin at orientation
/// atan2(v, u) mod pi is measured iff that orientation lies in
/// {theta + pi/2 mod pi : theta in the covered arc}. The DC bin is 0, the
/// mask is point symmetric about it, and full half-turn coverage yields an
/// all-zero mask. Fan geometries use the parallel wedge of the same arc (an
/// approximation; a warning is logged once per call).
FrequencyMask build_missing_wedge_mask(const ScanGeometry& geom, int width, int height);

/// Frequency-domain fusion: F^-1{ M * F(x_dn) + C * F(x_lact) } with C = 1,
/// or C = 1 - M when complement_lact is set. Inputs must share shape with the
/// mask; the output copies x_dn's grid metadata.
Image fourier_fuse(const Image& x_dn, const Image& x_lact, const FrequencyMask& mask,
                   bool complement_lact = false);

}  // namespace lact
