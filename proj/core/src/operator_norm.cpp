#include "lact/operator_norm.hpp"

#include <cmath>

#include "lact/gradient.hpp"
#include "lact/projector.hpp"
#include "lact/rng.hpp"

namespace lact {

namespace {

// w = K^T K v for the selected target, both as images on the grid.
Image normal_op(const Image& v, const ScanGeometry& geom, const GridSpec& grid,
                NormTarget target) {
  Image w(v.width, v.height, v.pixel_size, v.unit);
  switch (target) {
    case NormTarget::Identity:
      w = v;
      return w;
    case NormTarget::GradientOnly: {
      Image d = divergence(grad(v));
      for (std::size_t i = 0; i < w.size(); ++i) w.data[i] = -d.data[i];
      return w;
    }
    case NormTarget::IdentityAndGradient: {
      Image d = divergence(grad(v));
      for (std::size_t i = 0; i < w.size(); ++i) w.data[i] = v.data[i] - d.data[i];
      return w;
    }
    case NormTarget::ForwardOnly:
      return back_project(forward_project(v, geom), geom, grid);
    case NormTarget::ForwardAndGradient: {
      w = back_project(forward_project(v, geom), geom, grid);
      Image d = divergence(grad(v));
      for (std::size_t i = 0; i < w.size(); ++i) w.data[i] -= d.data[i];
      return w;
    }
  }
  return w;
}

}  // namespace

OperatorNormResult operator_norm(const ScanGeometry& geom, const GridSpec& grid,
                                 double tol, int max_iter, NormTarget target,
                                 std::uint64_t seed) {
  if (grid.width < 1 || grid.height < 1)
    throw ShapeMismatch("tomo_core", "operator_norm needs a non-empty grid");
  if (!(tol > 0.0)) throw InvalidConfig("tomo_core", "operator_norm tol must be positive");

  Rng rng(seed);
  Image v(grid.width, grid.height, grid.pixel_size, Unit::Attenuation);
  for (auto& x : v.data) x = rng.normal();
  double nv = l2_norm(v.data);
  if (nv == 0.0) {
    v.data[0] = 1.0;
    nv = 1.0;
  }
  for (auto& x : v.data) x /= nv;

  OperatorNormResult res;
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Image w = normal_op(v, geom, grid, target);
    double rayleigh = 0.0;  // v^T K^T K v with ||v|| = 1
    for (std::size_t i = 0; i < w.size(); ++i) rayleigh += v.data[i] * w.data[i];
    const double est = std::sqrt(std::max(rayleigh, 0.0));
    res.value = est;
    res.iterations = it;
    if (it > 1 && std::abs(est - prev) <= tol * std::max(est, 1e-300)) {
      res.converged = true;
      return res;
    }
    prev = est;
    const double nw = l2_norm(w.data);
    if (nw == 0.0) {  // v is in the null space; the estimate 0 is exact
      res.converged = true;
      return res;
    }
    for (std::size_t i = 0; i < w.size(); ++i) v.data[i] = w.data[i] / nw;
  }
  return res;  // converged stays false; caller may treat this as a warning
}

}  // namespace lact
