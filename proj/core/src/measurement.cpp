#include "lact/measurement.hpp"

#include <cmath>
#include <cstddef>

#include "lact/errors.hpp"
#include "lact/projector.hpp"

namespace lact {

void NoiseModel::validate() const {
  if (!(i0 > 0.0) || !std::isfinite(i0))
    throw InvalidConfig("simulate", "noise model needs i0 > 0");
  if (!(sigma_e >= 0.0) || !std::isfinite(sigma_e))
    throw InvalidConfig("simulate", "noise model needs sigma_e >= 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidConfig("simulate", "noise model needs epsilon > 0");
  if (!(epsilon <= i0))
    throw InvalidConfig("simulate", "noise model needs epsilon <= i0");
}

double sample_poisson(double lambda, Rng& rng) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw OutOfRange("simulate", "poisson mean must be finite and >= 0");
  if (lambda == 0.0) return 0.0;
  if (lambda < 30.0) {
    // Knuth: count uniforms until their product drops below exp(-lambda).
    const double limit = std::exp(-lambda);
    double prod = rng.uniform();
    double k = 0.0;
    while (prod > limit) {
      prod *= rng.uniform();
      k += 1.0;
    }
    return k;
  }
  const double draw = std::round(lambda + std::sqrt(lambda) * rng.normal());
  return draw > 0.0 ? draw : 0.0;
}

Sinogram apply_measurement_noise(const Sinogram& clean, const NoiseModel* model,
                                 std::uint64_t seed) {
  if (!all_finite(clean.data))
    throw NonFinite("simulate", "clean sinogram contains non-finite values");
  if (model == nullptr) return clean;
  model->validate();

  Sinogram out = clean;
  for (std::size_t ray = 0; ray < clean.data.size(); ++ray) {
    Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(ray)));
    const double lambda = model->i0 * std::exp(-clean.data[ray]);
    double counts = sample_poisson(lambda, rng);
    if (model->sigma_e > 0.0) counts += model->sigma_e * rng.normal();
    if (counts < model->epsilon) counts = model->epsilon;
    out.data[ray] = -std::log(counts / model->i0);
  }
  return out;
}

Sinogram simulate_measurement(const Image& img, const ScanGeometry& geom,
                              const NoiseModel* model, std::uint64_t seed) {
  return apply_measurement_noise(forward_project(img, geom), model, seed);
}

}  // namespace lact
