#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lact/geometry.hpp"

using namespace lact;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("build_geometry produces equispaced angles over a half turn") {
  ScanGeometry g =
      build_geometry(BeamType::Parallel, 0.0, kPi, 180, 256, 1.0, 0.0, 0.0, 128.0);
  REQUIRE(g.n_angles() == 180);
  CHECK(g.n_det == 256);
  const double one_degree = kPi / 180.0;
  for (int k = 0; k < 180; ++k)
    CHECK(g.angles[k] == doctest::Approx(k * one_degree).epsilon(1e-12));
  CHECK(g.angle_step() == doctest::Approx(one_degree));
  CHECK(g.arc() == doctest::Approx(kPi));
}

TEST_CASE("single-ray geometry is valid") {
  ScanGeometry g = build_geometry(BeamType::Parallel, 0.0, kPi, 1, 1, 1.0, 0.0, 0.0, 1.0);
  REQUIRE(g.n_angles() == 1);
  CHECK(g.angles[0] == 0.0);
  CHECK(g.n_det == 1);
}

TEST_CASE("fan preset mirrors the published scanner layout") {
  ScanGeometry g = fan835_geometry();
  CHECK(g.beam == BeamType::FanEquiangular);
  CHECK(g.n_det == 835);
  CHECK(g.src_to_origin == doctest::Approx(538.52));
  CHECK(g.src_to_det == doctest::Approx(946.7));
  CHECK(g.fov_radius == doctest::Approx(250.0));
  CHECK(g.n_angles() == 120);
  CHECK(g.arc() == doctest::Approx(2.0 * kPi / 3.0));
  // equiangular pitch: 1.095 mm on the detector arc
  CHECK(g.det_spacing * g.src_to_det == doctest::Approx(1.095));
}

TEST_CASE("desk preset covers a 128 mm field of view") {
  ScanGeometry g = desk_parallel_geometry(0.0, kPi, 180);
  CHECK(g.beam == BeamType::Parallel);
  CHECK(g.n_det == 256);
  CHECK(g.det_spacing == 1.0);
  CHECK(g.fov_radius == 128.0);
}

TEST_CASE("build_geometry rejects invalid parameters") {
  CHECK_THROWS_AS(build_geometry(BeamType::Parallel, 0.0, kPi, 0, 8, 1.0, 0, 0, 10.0),
                  InvalidGeometry);
  CHECK_THROWS_AS(build_geometry(BeamType::Parallel, 0.0, kPi, 8, 0, 1.0, 0, 0, 10.0),
                  InvalidGeometry);
  CHECK_THROWS_AS(build_geometry(BeamType::Parallel, 1.0, 1.0, 8, 8, 1.0, 0, 0, 10.0),
                  InvalidGeometry);
  CHECK_THROWS_AS(build_geometry(BeamType::Parallel, 0.0, 7.0, 8, 8, 1.0, 0, 0, 10.0),
                  InvalidGeometry);  // span > 2 pi
  CHECK_THROWS_AS(build_geometry(BeamType::Parallel, 0.0, kPi, 8, 8, -1.0, 0, 0, 10.0),
                  InvalidGeometry);
  CHECK_THROWS_AS(build_geometry(BeamType::Parallel, 0.0, kPi, 8, 8, 1.0, 0, 0, 0.0),
                  InvalidGeometry);
  // fan: source inside the FOV, or detector nearer than the rotation center
  CHECK_THROWS_AS(
      build_geometry(BeamType::FanEquiangular, 0.0, kPi, 8, 8, 0.01, 5.0, 20.0, 10.0),
      InvalidGeometry);
  CHECK_THROWS_AS(
      build_geometry(BeamType::FanEquiangular, 0.0, kPi, 8, 8, 0.01, 50.0, 40.0, 10.0),
      InvalidGeometry);
}

TEST_CASE("geometry ids detect parameter changes") {
  ScanGeometry a = desk_parallel_geometry(0.0, kPi, 60);
  ScanGeometry b = desk_parallel_geometry(0.0, kPi, 60);
  ScanGeometry c = desk_parallel_geometry(0.0, kPi, 61);
  ScanGeometry d = build_geometry(BeamType::Parallel, 0.0, kPi, 60, 256, 1.5, 0, 0, 128.0);
  CHECK(a.id() == b.id());
  CHECK(a.id() != c.id());
  CHECK(a.id() != d.id());
  CHECK(a.id() != 0);  // 0 is the "unknown" sentinel
}
