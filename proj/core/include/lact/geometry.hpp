#pragma once

#include <cstdint>
#include <vector>

#include "lact/types.hpp"

namespace lact {

enum class BeamType { Parallel, FanEquiangular };

/// Acquisition description. View angles are in radians and strictly
/// increasing. For parallel beams a view at angle theta sends rays along
/// direction (cos theta, sin theta) with the detector axis perpendicular to
/// them; detector offsets are centered on the rotation axis. Fan beams place
/// the source at distance src_to_origin from the rotation center opposite the
/// view direction, with equiangular detector elements (det_spacing in
/// radians) on an arc at src_to_det from the source.
struct ScanGeometry {
  BeamType beam = BeamType::Parallel;
  std::vector<double> angles;
  int n_det = 0;
  double det_spacing = 1.0;   // mm (parallel) or radians (fan)
  double src_to_origin = 0.0; // mm, fan only
  double src_to_det = 0.0;    // mm, fan only
  double fov_radius = 0.0;    // mm

  int n_angles() const { return static_cast<int>(angles.size()); }
  /// Mean angular spacing between consecutive views.
  double angle_step() const;
  /// Total covered arc, n_angles * angle_step.
  double arc() const;
  /// Stable hash of all parameters; used to detect sinogram/geometry mix-ups.
  std::uint64_t id() const;
};

/// Build an equispaced geometry covering [angle_start, angle_end), i.e.
/// angles[k] = angle_start + k * (angle_end - angle_start) / n_angles.
/// src_to_origin / src_to_det are ignored for parallel beams.
ScanGeometry build_geometry(BeamType beam, double angle_start, double angle_end,
                            int n_angles, int n_det, double det_spacing,
                            double src_to_origin, double src_to_det,
                            double fov_radius);

/// Desk-scale parallel preset: 256 detector bins at 1 mm, 128 mm field of
/// view; angle range and view count configurable.
ScanGeometry desk_parallel_geometry(double angle_start, double angle_end, int n_angles);

/// Clinical-scale equiangular fan preset: 835 detector elements (1.095 mm
/// pitch at the detector arc), source-origin 538.52 mm, source-detector
/// 946.7 mm, 250 mm field of view; 120 views over 120 degrees by default.
ScanGeometry fan835_geometry(double angle_start = 0.0,
                             double angle_end = 2.0943951023931953,
                             int n_angles = 120);

}  // namespace lact
