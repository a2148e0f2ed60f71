#pragma once

#include "lact/errors.hpp"

namespace lact {

/// Geometric noise level sigma(t) = sigma_min * (sigma_max/sigma_min)^t on
/// t in [0, 1], discretized as sigma_i = sigma(i / (n_steps - 1)).
struct NoiseSchedule {
  double sigma_min = 0.01;
  double sigma_max = 1.0;
  int n_steps = 1000;

  NoiseSchedule() = default;
  NoiseSchedule(double smin, double smax, int steps) : sigma_min(smin), sigma_max(smax), n_steps(steps) {
    validate();
  }

  void validate() const {
    if (!(sigma_min > 0.0)) throw InvalidConfig("diffusion", "sigma_min must be positive");
    if (!(sigma_max > sigma_min))
      throw InvalidConfig("diffusion", "sigma_max must exceed sigma_min");
    if (n_steps < 1) throw InvalidConfig("diffusion", "n_steps must be >= 1");
  }

  double sigma_at(double t) const;

  /// Grid time of level i; a single-level schedule sits at t = 1.
  double time_of(int i) const;

  double sigma_of(int i) const { return sigma_at(time_of(i)); }
};

}  // namespace lact
