#pragma once

#include "lact/rng.hpp"
#include "lact/schedule.hpp"
#include "lact/score.hpp"
#include "lact/types.hpp"

namespace lact {

/// Reverse-diffusion step from level i to i-1 (requires 1 <= i <= n_steps-1):
///   x' = x + (sigma_i^2 - sigma_{i-1}^2) * score(x, t_i)
/// plus sqrt(sigma_i^2 - sigma_{i-1}^2) * z when stochastic. Passing rng ==
/// nullptr suppresses the noise term regardless of `stochastic`.
Image predictor_step(const Image& x, const ScoreFunction& score, const NoiseSchedule& sched,
                     int i, Rng* rng, bool stochastic);

/// Langevin refinement at level i (0 <= i <= n_steps-1) with adaptive step
///   eps = 2 * (snr * ||z|| / ||s||)^2,  x' = x + eps * s + sqrt(2 eps) * z.
/// A zero score or snr = 0 returns x unchanged. Passing rng == nullptr uses
/// the large-dimension limit ||z|| -> sqrt(d) and adds no noise.
Image corrector_step(const Image& x, const ScoreFunction& score, const NoiseSchedule& sched,
                     int i, Rng* rng, double snr);

/// Predictor-corrector chain: x ~ N(0, sigma_max^2 I), then for
/// i = n_steps-1 .. 1 one predictor at level i and one corrector at the
/// post-predictor level i-1 (exactly 2*(n_steps-1) score evaluations).
Image pc_sample(const ScoreFunction& score, const NoiseSchedule& sched, int width,
                int height, Rng& rng, double snr = 0.16, bool stochastic_predictor = true);

}  // namespace lact
