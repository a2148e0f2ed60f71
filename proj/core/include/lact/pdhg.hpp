#pragma once

#include <vector>

#include "lact/geometry.hpp"
#include "lact/gradient.hpp"
#include "lact/types.hpp"

namespace lact {

/// Data-term operator: the tomographic projector or the identity map (in
/// Identity mode the sinogram layout is read as an image, one row per
/// sinogram angle row).
enum class OpMode { Tomography, Identity };

struct PdhgParams {
  double tau = 0.0;    // primal step
  double sigma = 0.0;  // dual step
  double theta = 1.0;  // extrapolation
  double lambda = 0.0; // total-variation weight
  int n_iters = 0;
  // Literal warm-start reading: primal starts at zero and only the
  // extrapolated variable starts at the warm-start image.
  bool warm_start_bar_only = false;

  /// tau = sigma = 1/L for a measured operator norm L (so tau*sigma*L^2 = 1).
  static PdhgParams from_norm(double L, double lambda, int n_iters);
};

struct PdhgDiagnostics {
  std::vector<double> objective;      // 0.5*||Ax-y||^2 + lambda*||grad x||_{2,1}
  std::vector<double> primal_change;  // ||x_{n+1} - x_n||
  std::vector<double> residual;       // ||Ax - y|| / max(||y||, eps)
  double max_dual_violation = 0.0;    // max over iterations of max(|q| - lambda)
};

struct PdhgResult {
  Image x;
  Sinogram p;     // final data-term dual
  VectorField q;  // final gradient dual
  PdhgDiagnostics diag;
};

/// p <- (p + sigma * (ax_bar - y)) / (1 + sigma), elementwise.
Sinogram dual_update_p(const Sinogram& p, const Sinogram& ax_bar, const Sinogram& y,
                       double sigma);

/// q <- lambda * s / max(lambda, |s|) with s = q + sigma * grad_x_bar and |s|
/// the pointwise isotropic magnitude. lambda = 0 returns a zero field.
VectorField dual_update_q(const VectorField& q, const VectorField& grad_x_bar,
                          double sigma, double lambda);

/// Primal-dual total-variation solve of
///   min_x 0.5 * ||Ax - y||^2 + lambda * ||grad x||_{2,1}
/// running exactly n_iters iterations (p-update, q-update,
/// x <- x - tau*A^T p + tau*div q, x_bar <- x + theta*(x - x_prev)).
/// Duals always start at zero; warm_start (optional) seeds the primal.
/// One forward and one adjoint projector application per iteration.
PdhgResult pdhg_tv(const Sinogram& y, const ScanGeometry& geom, const PdhgParams& params,
                   const Image* warm_start, OpMode mode, const GridSpec& grid);

/// Baseline regularization weight heuristic: 1e-2 * mean|y| / mean|grad fbp|.
double default_tv_lambda(const Sinogram& y, const Image& fbp_image);

}  // namespace lact
