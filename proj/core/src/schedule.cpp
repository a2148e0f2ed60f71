#include "lact/schedule.hpp"

#include <cmath>
#include <string>

namespace lact {

double NoiseSchedule::sigma_at(double t) const {
  if (!(t >= 0.0 && t <= 1.0))
    throw OutOfRange("diffusion", "t = " + std::to_string(t) + " outside [0, 1]");
  return sigma_min * std::pow(sigma_max / sigma_min, t);
}

double NoiseSchedule::time_of(int i) const {
  if (i < 0 || i >= n_steps)
    throw IndexOutOfRange("diffusion",
                          "level " + std::to_string(i) + " outside [0, " +
                              std::to_string(n_steps - 1) + "]");
  if (n_steps == 1) return 1.0;
  return static_cast<double>(i) / static_cast<double>(n_steps - 1);
}

}  // namespace lact
