#include "lact/wedge.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "lact/fourier.hpp"

namespace lact {

namespace {

constexpr double kPi = std::numbers::pi;

inline double mod_pi(double a) {
  a = std::fmod(a, kPi);
  return a < 0.0 ? a + kPi : a;
}

}  // namespace

FrequencyMask build_missing_wedge_mask(const ScanGeometry& geom, int width, int height) {
  if (width < 1 || height < 1)
    throw ShapeMismatch("fusion", "mask shape must be non-empty");
  if (geom.beam == BeamType::FanEquiangular)
    std::cerr << "[fusion] note: fan-beam coverage approximated by the parallel "
                 "wedge of the same arc\n";

  const double span = geom.arc();
  const double start = geom.angles.front();
  const int cx = width / 2, cy = height / 2;

  // Orientation is measured iff mod_pi(phi - (start + pi/2)) < span.
  auto measured = [&](int u, int v_up) {
    if (span >= kPi - 1e-12) return true;
    const double phi = std::atan2(static_cast<double>(v_up), static_cast<double>(u));
    return mod_pi(phi - start - 0.5 * kPi) < span;
  };

  FrequencyMask mask(width, height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (r == cy && c == cx) continue;  // DC stays 0
      const int u = c - cx;
      const int v_up = cy - r;
      // Symmetrize against the modular mirror bin: for even sizes the
      // Nyquist row/column maps onto itself with only v (or u) negated,
      // where the raw orientation predicate is not symmetric.
      const int rm = (2 * cy - r) % height;
      const int cm = (2 * cx - c) % width;
      const int um = ((cm + width) % width) - cx;
      const int vm = cy - ((rm + height) % height);
      const bool in_wedge = !measured(u, v_up) && !measured(um, vm);
      mask.at(r, c) = in_wedge ? 1 : 0;
    }
  }
  return mask;
}

Image fourier_fuse(const Image& x_dn, const Image& x_lact, const FrequencyMask& mask,
                   bool complement_lact) {
  if (!x_dn.same_shape(x_lact))
    throw ShapeMismatch("fusion", "fusion inputs disagree in shape");
  if (x_dn.width != mask.width || x_dn.height != mask.height)
    throw ShapeMismatch("fusion", "mask shape differs from the images");

  const ComplexGrid f_dn = centered_dft2(x_dn);
  const ComplexGrid f_lact = centered_dft2(x_lact);
  ComplexGrid fused(mask.width, mask.height);
  for (std::size_t i = 0; i < fused.size(); ++i) {
    const double m = static_cast<double>(mask.data[i]);
    const double c = complement_lact ? 1.0 - m : 1.0;
    fused.data[i] = m * f_dn.data[i] + c * f_lact.data[i];
  }
  Image out = inverse_centered_dft2(fused);
  out.pixel_size = x_dn.pixel_size;
  out.unit = x_dn.unit;
  return out;
}

}  // namespace lact
