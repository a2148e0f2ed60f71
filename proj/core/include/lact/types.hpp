#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lact/errors.hpp"

namespace lact {

/// Unit space of an image: normalized [0,1] values or linear attenuation (1/mm).
enum class Unit { Normalized, Attenuation };

/// Real-valued 2D grid, row-major, `height` rows of `width` samples.
struct Image {
  int width = 0;
  int height = 0;
  double pixel_size = 1.0;  // mm
  Unit unit = Unit::Normalized;
  std::vector<double> data;

  Image() = default;
  Image(int w, int h, double px = 1.0, Unit u = Unit::Normalized)
      : width(w), height(h), pixel_size(px), unit(u),
        data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0) {}

  double& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
  double at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
  std::size_t size() const { return data.size(); }
  bool same_shape(const Image& o) const { return width == o.width && height == o.height; }
};

/// Measured projections, row-major with one row per view angle.
struct Sinogram {
  int n_angles = 0;
  int n_det = 0;
  double det_spacing = 1.0;       // mm (parallel) or radians (fan)
  std::uint64_t geometry_id = 0;  // id of the producing geometry, 0 when unknown
  std::vector<double> data;

  Sinogram() = default;
  Sinogram(int na, int nd, double ds = 1.0)
      : n_angles(na), n_det(nd), det_spacing(ds),
        data(static_cast<std::size_t>(na) * static_cast<std::size_t>(nd), 0.0) {}

  double& at(int angle, int det) { return data[static_cast<std::size_t>(angle) * n_det + det]; }
  double at(int angle, int det) const {
    return data[static_cast<std::size_t>(angle) * n_det + det];
  }
  std::size_t size() const { return data.size(); }
  bool same_shape(const Sinogram& o) const {
    return n_angles == o.n_angles && n_det == o.n_det;
  }
};

/// Two-component field on the image grid (horizontal and vertical planes).
struct VectorField {
  int width = 0;
  int height = 0;
  std::vector<double> dx;  // horizontal component
  std::vector<double> dy;  // vertical component

  VectorField() = default;
  VectorField(int w, int h)
      : width(w), height(h),
        dx(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0),
        dy(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0) {}

  std::size_t size() const { return dx.size(); }
  bool same_shape(const VectorField& o) const { return width == o.width && height == o.height; }
};

/// DC-centered complex spectrum of a real grid.
struct ComplexGrid {
  int width = 0;
  int height = 0;
  std::vector<std::complex<double>> data;

  ComplexGrid() = default;
  ComplexGrid(int w, int h)
      : width(w), height(h),
        data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), {0.0, 0.0}) {}

  std::complex<double>& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  const std::complex<double>& at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t size() const { return data.size(); }
};

/// Binary frequency-domain mask, same indexing as ComplexGrid.
struct FrequencyMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  FrequencyMask() = default;
  FrequencyMask(int w, int h)
      : width(w), height(h),
        data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}

  std::uint8_t& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::uint8_t at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  /// Fraction of bins set to 1.
  double fraction() const {
    if (data.empty()) return 0.0;
    std::size_t n = 0;
    for (auto b : data) n += b;
    return static_cast<double>(n) / static_cast<double>(data.size());
  }
};

/// Shape and sampling of a reconstruction target grid.
struct GridSpec {
  int width = 0;
  int height = 0;
  double pixel_size = 1.0;  // mm
};

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace lact
