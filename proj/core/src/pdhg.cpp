#include "lact/pdhg.hpp"

#include <cmath>
#include <string>

#include "lact/projector.hpp"

namespace lact {

namespace {

struct DataOp {
  OpMode mode;
  const ScanGeometry* geom;
  GridSpec grid;

  Sinogram apply(const Image& x) const {
    if (mode == OpMode::Tomography) return forward_project(x, *geom);
    Sinogram s(x.height, x.width, 1.0);
    s.data = x.data;
    return s;
  }

  Image adjoint(const Sinogram& s) const {
    if (mode == OpMode::Tomography) return back_project(s, *geom, grid);
    Image x(s.n_det, s.n_angles, grid.pixel_size, Unit::Attenuation);
    x.data = s.data;
    return x;
  }
};

double tv_value(const Image& x) {
  VectorField g = grad(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    acc += std::sqrt(g.dx[i] * g.dx[i] + g.dy[i] * g.dy[i]);
  return acc;
}

}  // namespace

PdhgParams PdhgParams::from_norm(double L, double lambda, int n_iters) {
  if (!(L > 0.0)) throw InvalidConfig("variational", "operator norm must be positive");
  PdhgParams p;
  p.tau = 1.0 / L;
  p.sigma = 1.0 / L;
  p.theta = 1.0;
  p.lambda = lambda;
  p.n_iters = n_iters;
  return p;
}

Sinogram dual_update_p(const Sinogram& p, const Sinogram& ax_bar, const Sinogram& y,
                       double sigma) {
  if (!p.same_shape(ax_bar) || !p.same_shape(y))
    throw ShapeMismatch("variational", "dual_update_p operands disagree");
  if (!(sigma >= 0.0)) throw InvalidConfig("variational", "sigma must be non-negative");
  Sinogram out = p;
  const double inv = 1.0 / (1.0 + sigma);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data[i] = (p.data[i] + sigma * (ax_bar.data[i] - y.data[i])) * inv;
  return out;
}

VectorField dual_update_q(const VectorField& q, const VectorField& grad_x_bar,
                          double sigma, double lambda) {
  if (!q.same_shape(grad_x_bar))
    throw ShapeMismatch("variational", "dual_update_q operands disagree");
  if (!(sigma >= 0.0)) throw InvalidConfig("variational", "sigma must be non-negative");
  if (!(lambda >= 0.0)) throw InvalidConfig("variational", "lambda must be non-negative");
  VectorField out(q.width, q.height);
  if (lambda == 0.0) return out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double sx = q.dx[i] + sigma * grad_x_bar.dx[i];
    const double sy = q.dy[i] + sigma * grad_x_bar.dy[i];
    const double mag = std::sqrt(sx * sx + sy * sy);
    const double scale = lambda / std::max(lambda, mag);
    out.dx[i] = sx * scale;
    out.dy[i] = sy * scale;
  }
  return out;
}

PdhgResult pdhg_tv(const Sinogram& y, const ScanGeometry& geom, const PdhgParams& params,
                   const Image* warm_start, OpMode mode, const GridSpec& grid) {
  if (!(params.tau > 0.0) || !(params.sigma > 0.0))
    throw InvalidConfig("variational", "step sizes must be positive");
  if (!(params.theta >= 0.0 && params.theta <= 1.0))
    throw InvalidConfig("variational", "theta must lie in [0, 1]");
  if (!(params.lambda >= 0.0)) throw InvalidConfig("variational", "lambda must be non-negative");
  if (params.n_iters < 0) throw InvalidConfig("variational", "n_iters must be non-negative");
  if (!all_finite(y.data)) throw NonFinite("variational", "data term contains non-finite entries");

  DataOp op{mode, &geom, grid};
  if (mode == OpMode::Identity) {
    op.grid = GridSpec{y.n_det, y.n_angles, 1.0};
    if (grid.width != 0 && (grid.width != y.n_det || grid.height != y.n_angles))
      throw ShapeMismatch("variational", "identity-mode grid must match the data shape");
  } else {
    if (y.n_angles != geom.n_angles() || y.n_det != geom.n_det)
      throw GeometryMismatch("data shape does not match the geometry", "variational");
  }

  Image x(op.grid.width, op.grid.height, op.grid.pixel_size, Unit::Attenuation);
  if (warm_start != nullptr) {
    if (warm_start->width != op.grid.width || warm_start->height != op.grid.height)
      throw ShapeMismatch("variational", "warm start shape does not match the grid");
    if (!all_finite(warm_start->data))
      throw NonFinite("variational", "warm start contains non-finite entries");
  }

  Image xbar = x;
  if (warm_start != nullptr) {
    xbar.data = warm_start->data;
    if (!params.warm_start_bar_only) x.data = warm_start->data;
  }

  Sinogram p(y.n_angles, y.n_det, y.det_spacing);
  p.geometry_id = y.geometry_id;
  VectorField q(op.grid.width, op.grid.height);

  Sinogram ax = op.apply(x);
  Sinogram axbar = (params.warm_start_bar_only && warm_start != nullptr) ? op.apply(xbar) : ax;

  PdhgResult res;
  auto& diag = res.diag;
  diag.objective.reserve(params.n_iters);
  diag.primal_change.reserve(params.n_iters);
  diag.residual.reserve(params.n_iters);
  const double ynorm = std::max(l2_norm(y.data), 1e-300);

  for (int it = 0; it < params.n_iters; ++it) {
    p = dual_update_p(p, axbar, y, params.sigma);
    q = dual_update_q(q, grad(xbar), params.sigma, params.lambda);

    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double mag = std::sqrt(q.dx[i] * q.dx[i] + q.dy[i] * q.dy[i]);
      worst = std::max(worst, mag - params.lambda);
    }
    diag.max_dual_violation = std::max(diag.max_dual_violation, worst);

    const Image atp = op.adjoint(p);
    const Image dv = divergence(q);
    Image x_new = x;
    for (std::size_t i = 0; i < x.size(); ++i)
      x_new.data[i] = x.data[i] + params.tau * (dv.data[i] - atp.data[i]);
    if (!all_finite(x_new.data))
      throw NonFinite("variational",
                      "iterate diverged at iteration " + std::to_string(it + 1));

    double change = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x_new.data[i] - x.data[i];
      change += d * d;
    }
    diag.primal_change.push_back(std::sqrt(change));

    for (std::size_t i = 0; i < x.size(); ++i)
      xbar.data[i] = x_new.data[i] + params.theta * (x_new.data[i] - x.data[i]);

    const Sinogram ax_new = op.apply(x_new);
    // A x_bar by linearity from the two stored products (one forward per
    // iteration total).
    for (std::size_t i = 0; i < axbar.size(); ++i)
      axbar.data[i] = (1.0 + params.theta) * ax_new.data[i] - params.theta * ax.data[i];

    double fid = 0.0;
    for (std::size_t i = 0; i < ax_new.size(); ++i) {
      const double d = ax_new.data[i] - y.data[i];
      fid += d * d;
    }
    diag.objective.push_back(0.5 * fid + params.lambda * tv_value(x_new));
    diag.residual.push_back(std::sqrt(fid) / ynorm);

    x.data.swap(x_new.data);
    ax = ax_new;
  }

  res.x = std::move(x);
  res.p = std::move(p);
  res.q = std::move(q);
  return res;
}

double default_tv_lambda(const Sinogram& y, const Image& fbp_image) {
  double my = 0.0;
  for (double v : y.data) my += std::abs(v);
  my /= std::max<std::size_t>(y.size(), 1);
  VectorField g = grad(fbp_image);
  double mg = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    mg += std::sqrt(g.dx[i] * g.dx[i] + g.dy[i] * g.dy[i]);
  mg /= std::max<std::size_t>(g.size(), 1);
  const double lambda = 1e-2 * my / mg;
  if (!std::isfinite(lambda) || !(lambda > 0.0)) return 1e-3;
  return lambda;
}

}  // namespace lact
