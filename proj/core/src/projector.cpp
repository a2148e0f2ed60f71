#include "lact/projector.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace lact {

namespace {

struct Ray {
  double px, py;  // a point on the ray, mm
  double dx, dy;  // unit direction
};

Ray make_ray(const ScanGeometry& g, int angle_idx, int det_idx) {
  if (g.beam == BeamType::Parallel) {
    const double th = g.angles[angle_idx];
    const double s = (det_idx - (g.n_det - 1) / 2.0) * g.det_spacing;
    return {-s * std::sin(th), s * std::cos(th), std::cos(th), std::sin(th)};
  }
  const double beta = g.angles[angle_idx];
  const double gamma = (det_idx - (g.n_det - 1) / 2.0) * g.det_spacing;
  const double phi = beta + gamma;
  return {-g.src_to_origin * std::cos(beta), -g.src_to_origin * std::sin(beta),
          std::cos(phi), std::sin(phi)};
}

// Shared gather/scatter kernel. Visit(row, col, weight) is called for every
// (pixel, weight) pair of the ray so forward and adjoint use identical
// coefficients.
template <typename Visit>
inline void trace_ray(const Ray& ray, int width, int height, double pixel,
                      const std::vector<std::uint8_t>& fov, Visit&& visit) {
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  if (std::abs(ray.dx) >= std::abs(ray.dy)) {
    const double w = pixel / std::abs(ray.dx);
    for (int col = 0; col < width; ++col) {
      const double x = (col - cx) * pixel;
      const double t = (x - ray.px) / ray.dx;
      const double y = ray.py + t * ray.dy;
      const double r = cy - y / pixel;
      const int r0 = static_cast<int>(std::floor(r));
      const double f = r - r0;
      if (r0 >= 0 && r0 < height && fov[static_cast<std::size_t>(r0) * width + col])
        visit(r0, col, w * (1.0 - f));
      if (r0 + 1 >= 0 && r0 + 1 < height && fov[static_cast<std::size_t>(r0 + 1) * width + col])
        visit(r0 + 1, col, w * f);
    }
  } else {
    const double w = pixel / std::abs(ray.dy);
    for (int row = 0; row < height; ++row) {
      const double y = (cy - row) * pixel;
      const double t = (y - ray.py) / ray.dy;
      const double x = ray.px + t * ray.dx;
      const double c = x / pixel + cx;
      const int c0 = static_cast<int>(std::floor(c));
      const double f = c - c0;
      if (c0 >= 0 && c0 < width && fov[static_cast<std::size_t>(row) * width + c0])
        visit(row, c0, w * (1.0 - f));
      if (c0 + 1 >= 0 && c0 + 1 < width && fov[static_cast<std::size_t>(row) * width + c0 + 1])
        visit(row, c0 + 1, w * f);
    }
  }
}

std::vector<std::uint8_t> fov_mask(int width, int height, double pixel, double radius) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(width) * height);
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  const double r2 = radius * radius;
  for (int row = 0; row < height; ++row) {
    const double y = (cy - row) * pixel;
    for (int col = 0; col < width; ++col) {
      const double x = (col - cx) * pixel;
      m[static_cast<std::size_t>(row) * width + col] = (x * x + y * y <= r2) ? 1 : 0;
    }
  }
  return m;
}

void check_grid_fits(int width, int height, double pixel, const ScanGeometry& g,
                     const char* what) {
  if (width < 1 || height < 1)
    throw GeometryMismatch(std::string(what) + " has empty shape");
  if (!(pixel > 0.0)) throw GeometryMismatch(std::string(what) + " pixel size must be positive");
  const double half = 0.5 * pixel * std::max(width, height);
  if (half > g.fov_radius * (1.0 + 1e-12))
    throw GeometryMismatch(std::string(what) + " extends beyond the field of view");
}

}  // namespace

Sinogram forward_project(const Image& img, const ScanGeometry& geom) {
  check_grid_fits(img.width, img.height, img.pixel_size, geom, "image");
  Sinogram sino(geom.n_angles(), geom.n_det, geom.det_spacing);
  sino.geometry_id = geom.id();
  const auto fov = fov_mask(img.width, img.height, img.pixel_size, geom.fov_radius);
  for (int a = 0; a < geom.n_angles(); ++a) {
    for (int k = 0; k < geom.n_det; ++k) {
      double acc = 0.0;
      trace_ray(make_ray(geom, a, k), img.width, img.height, img.pixel_size, fov,
                [&](int r, int c, double w) { acc += w * img.at(r, c); });
      sino.at(a, k) = acc;
    }
  }
  return sino;
}

Image back_project(const Sinogram& sino, const ScanGeometry& geom, const GridSpec& grid) {
  if (sino.n_angles != geom.n_angles() || sino.n_det != geom.n_det)
    throw GeometryMismatch("sinogram shape does not match the geometry");
  if (sino.geometry_id != 0 && sino.geometry_id != geom.id())
    throw GeometryMismatch("sinogram was produced by a different geometry");
  check_grid_fits(grid.width, grid.height, grid.pixel_size, geom, "target grid");
  Image img(grid.width, grid.height, grid.pixel_size, Unit::Attenuation);
  const auto fov = fov_mask(grid.width, grid.height, grid.pixel_size, geom.fov_radius);
  for (int a = 0; a < geom.n_angles(); ++a) {
    for (int k = 0; k < geom.n_det; ++k) {
      const double v = sino.at(a, k);
      if (v == 0.0) continue;
      trace_ray(make_ray(geom, a, k), grid.width, grid.height, grid.pixel_size, fov,
                [&](int r, int c, double w) { img.at(r, c) += w * v; });
    }
  }
  return img;
}

}  // namespace lact
