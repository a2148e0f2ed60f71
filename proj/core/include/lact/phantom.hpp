#pragma once

#include <cstdint>

#include "lact/types.hpp"

namespace lact {

enum class PhantomKind {
  SheppLogan,      // the standard 10-ellipse head phantom, amplitudes scaled to [0, 1]
  EllipseCardiac,  // seeded arrangement: chambers, myocardium ring, thin vessels
};

/// Deterministic phantom in normalized [0, 1] units. Pixels are anti-aliased
/// by averaging the analytic shape over a 4x4 subpixel grid; the seed only
/// affects EllipseCardiac.
Image make_phantom(PhantomKind kind, int size, std::uint64_t seed = 0,
                   double pixel_size = 1.0);

}  // namespace lact
