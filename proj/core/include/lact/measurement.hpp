#pragma once

#include <cstdint>

#include "lact/geometry.hpp"
#include "lact/rng.hpp"
#include "lact/types.hpp"

namespace lact {

/// Photon-counting detector model. Expected counts for a clean line integral
/// y are i0 * exp(-y); recorded counts add Poisson shot noise and Gaussian
/// electronic noise, and are floored at `epsilon` counts before the log
/// transform back to line integrals.
struct NoiseModel {
  double i0 = 1e5;       // unattenuated photon count per ray
  double sigma_e = 10.0; // electronic noise, std dev in counts
  double epsilon = 0.5;  // count floor before the log

  void validate() const;
};

/// Poisson draw; exact inversion below mean 30, rounded Gaussian above.
/// Exposed for the statistical tests.
double sample_poisson(double lambda, Rng& rng);

/// Noisy log-domain measurement of a clean sinogram. Each ray uses its own
/// counter-derived stream (Rng::mix(seed, ray_index), rays in row-major
/// order), so results do not depend on evaluation order. model == nullptr is
/// an exact pass-through.
Sinogram apply_measurement_noise(const Sinogram& clean, const NoiseModel* model,
                                 std::uint64_t seed);

/// Project an attenuation image and measure it: forward_project followed by
/// apply_measurement_noise. model == nullptr returns the clean line
/// integrals bit-exactly.
Sinogram simulate_measurement(const Image& img, const ScanGeometry& geom,
                              const NoiseModel* model, std::uint64_t seed);

}  // namespace lact
