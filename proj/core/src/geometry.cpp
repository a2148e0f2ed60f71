#include "lact/geometry.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

namespace lact {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline void hash_bytes(std::uint64_t& h, const void* p, std::size_t n) {
  const auto* b = static_cast<const unsigned char*>(p);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= b[i];
    h *= 0x100000001b3ULL;  // FNV-1a
  }
}

inline void hash_double(std::uint64_t& h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  hash_bytes(h, &bits, sizeof(bits));
}

}  // namespace

double ScanGeometry::angle_step() const {
  if (angles.size() < 2) return std::numbers::pi;
  return (angles.back() - angles.front()) / static_cast<double>(angles.size() - 1);
}

double ScanGeometry::arc() const {
  return angle_step() * static_cast<double>(angles.size());
}

std::uint64_t ScanGeometry::id() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::uint32_t b = static_cast<std::uint32_t>(beam);
  hash_bytes(h, &b, sizeof(b));
  std::uint32_t nd = static_cast<std::uint32_t>(n_det);
  hash_bytes(h, &nd, sizeof(nd));
  hash_double(h, det_spacing);
  hash_double(h, src_to_origin);
  hash_double(h, src_to_det);
  hash_double(h, fov_radius);
  std::uint32_t na = static_cast<std::uint32_t>(angles.size());
  hash_bytes(h, &na, sizeof(na));
  for (double a : angles) hash_double(h, a);
  return h == 0 ? 1 : h;  // 0 is reserved for "unknown"
}

ScanGeometry build_geometry(BeamType beam, double angle_start, double angle_end,
                            int n_angles, int n_det, double det_spacing,
                            double src_to_origin, double src_to_det,
                            double fov_radius) {
  if (n_angles < 1) throw InvalidGeometry("n_angles must be >= 1");
  if (n_det < 1) throw InvalidGeometry("n_det must be >= 1");
  if (!(angle_end > angle_start)) throw InvalidGeometry("angle_end must exceed angle_start");
  if (angle_end - angle_start > kTwoPi + 1e-12)
    throw InvalidGeometry("angular span exceeds a full rotation");
  if (!(det_spacing > 0.0)) throw InvalidGeometry("det_spacing must be positive");
  if (!(fov_radius > 0.0)) throw InvalidGeometry("fov_radius must be positive");

  ScanGeometry g;
  g.beam = beam;
  g.n_det = n_det;
  g.det_spacing = det_spacing;
  g.fov_radius = fov_radius;
  if (beam == BeamType::FanEquiangular) {
    if (!(src_to_origin > fov_radius))
      throw InvalidGeometry("fan source must sit outside the field of view");
    if (!(src_to_det > src_to_origin))
      throw InvalidGeometry("fan detector must sit beyond the rotation center");
    if (n_det * det_spacing >= std::numbers::pi)
      throw InvalidGeometry("fan aperture must stay below pi radians");
    g.src_to_origin = src_to_origin;
    g.src_to_det = src_to_det;
  }
  g.angles.resize(n_angles);
  const double step = (angle_end - angle_start) / static_cast<double>(n_angles);
  for (int k = 0; k < n_angles; ++k) g.angles[k] = angle_start + step * k;
  return g;
}

ScanGeometry desk_parallel_geometry(double angle_start, double angle_end, int n_angles) {
  return build_geometry(BeamType::Parallel, angle_start, angle_end, n_angles,
                        256, 1.0, 0.0, 0.0, 128.0);
}

ScanGeometry fan835_geometry(double angle_start, double angle_end, int n_angles) {
  const double pitch_mm = 1.095;
  const double src_to_det = 946.7;
  return build_geometry(BeamType::FanEquiangular, angle_start, angle_end, n_angles,
                        835, pitch_mm / src_to_det, 538.52, src_to_det, 250.0);
}

}  // namespace lact
