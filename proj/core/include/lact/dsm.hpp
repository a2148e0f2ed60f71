#pragma once

#include <cstdint>
#include <vector>

#include "lact/schedule.hpp"
#include "lact/score.hpp"
#include "lact/types.hpp"

namespace lact {

/// Monte-Carlo denoising score-matching loss with weighting sigma(t)^2:
/// average over draws (t ~ U[0,1], x0 uniform over `clean`, z ~ N(0,I)) of
/// sigma(t)^2 * || score(x0 + sigma(t) z, t) + z / sigma(t) ||^2.
/// A zero score gives the pixel count in expectation; the exact conditional
/// target gives zero.
double dsm_loss(const ScoreFunction& score, const std::vector<Image>& clean,
                const NoiseSchedule& sched, int n_draws, std::uint64_t seed);

}  // namespace lact
