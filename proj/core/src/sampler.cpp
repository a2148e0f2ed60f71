#include "lact/sampler.hpp"

#include <cmath>
#include <string>

namespace lact {

namespace {

Image checked_score(const ScoreFunction& score, const Image& x, double t) {
  Image s = score.evaluate(x, t);
  if (!s.same_shape(x))
    throw ShapeMismatch("diffusion", "score output shape differs from the input");
  return s;
}

}  // namespace

Image predictor_step(const Image& x, const ScoreFunction& score, const NoiseSchedule& sched,
                     int i, Rng* rng, bool stochastic) {
  if (i < 1 || i >= sched.n_steps)
    throw IndexOutOfRange("diffusion",
                          "predictor level " + std::to_string(i) + " outside [1, " +
                              std::to_string(sched.n_steps - 1) + "]");
  const double si = sched.sigma_of(i);
  const double sprev = sched.sigma_of(i - 1);
  const double beta = si * si - sprev * sprev;

  const Image s = checked_score(score, x, sched.time_of(i));
  Image out = x;
  for (std::size_t k = 0; k < out.size(); ++k) out.data[k] += beta * s.data[k];
  if (stochastic && rng != nullptr) {
    const double amp = std::sqrt(beta);
    for (std::size_t k = 0; k < out.size(); ++k) out.data[k] += amp * rng->normal();
  }
  return out;
}

Image corrector_step(const Image& x, const ScoreFunction& score, const NoiseSchedule& sched,
                     int i, Rng* rng, double snr) {
  if (i < 0 || i >= sched.n_steps)
    throw IndexOutOfRange("diffusion",
                          "corrector level " + std::to_string(i) + " outside [0, " +
                              std::to_string(sched.n_steps - 1) + "]");
  if (!(snr >= 0.0)) throw InvalidConfig("diffusion", "snr must be non-negative");

  const Image s = checked_score(score, x, sched.time_of(i));
  const double s_norm = l2_norm(s.data);

  std::vector<double> z;
  double z_norm;
  if (rng != nullptr) {
    z.resize(x.size());
    for (auto& v : z) v = rng->normal();
    z_norm = l2_norm(z);
  } else {
    z_norm = std::sqrt(static_cast<double>(x.size()));
  }

  Image out = x;
  if (s_norm == 0.0 || snr == 0.0) return out;  // no drift and no injected noise

  const double ratio = snr * z_norm / s_norm;
  const double eps = 2.0 * ratio * ratio;
  for (std::size_t k = 0; k < out.size(); ++k) out.data[k] += eps * s.data[k];
  if (rng != nullptr) {
    const double amp = std::sqrt(2.0 * eps);
    for (std::size_t k = 0; k < out.size(); ++k) out.data[k] += amp * z[k];
  }
  return out;
}

Image pc_sample(const ScoreFunction& score, const NoiseSchedule& sched, int width,
                int height, Rng& rng, double snr, bool stochastic_predictor) {
  if (width < 1 || height < 1)
    throw ShapeMismatch("diffusion", "pc_sample needs a non-empty shape");
  Image x(width, height);
  for (auto& v : x.data) v = sched.sigma_max * rng.normal();
  for (int i = sched.n_steps - 1; i >= 1; --i) {
    x = predictor_step(x, score, sched, i, &rng, stochastic_predictor);
    x = corrector_step(x, score, sched, i - 1, &rng, snr);
  }
  return x;
}

}  // namespace lact
