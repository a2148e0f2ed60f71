#pragma once

#include <cstdint>

#include "lact/geometry.hpp"
#include "lact/types.hpp"

namespace lact {

/// Which operator the power iteration measures. ForwardAndGradient is the
/// stacked (projector, gradient) pair used for reconstruction step sizes;
/// IdentityAndGradient is the denoising analogue; the remaining targets are
/// single blocks used for cross-checks.
enum class NormTarget {
  ForwardAndGradient,
  IdentityAndGradient,
  ForwardOnly,
  GradientOnly,
  Identity,
};

struct OperatorNormResult {
  double value = 0.0;
  bool converged = false;  // false: max_iter hit before the tolerance; value is the last estimate
  int iterations = 0;
};

/// Largest singular value via power iteration on K^T K, with a seeded random
/// start. Stops when the estimate changes by less than tol relatively.
OperatorNormResult operator_norm(const ScanGeometry& geom, const GridSpec& grid,
                                 double tol = 1e-6, int max_iter = 500,
                                 NormTarget target = NormTarget::ForwardAndGradient,
                                 std::uint64_t seed = 0x6f7e15);

}  // namespace lact
