#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "lact/io.hpp"
#include "lact/operator_norm.hpp"
#include "lact/pdhg.hpp"
#include "lact/phantom.hpp"
#include "lact/projector.hpp"

using namespace lact;

namespace {

constexpr double kPi = std::numbers::pi;

ScanGeometry unused_geometry() {
  return build_geometry(BeamType::Parallel, 0.0, kPi, 1, 1, 1.0, 0, 0, 1.0);
}

Sinogram image_as_data(const Image& img) {
  Sinogram y(img.height, img.width, 1.0);
  y.data = img.data;
  return y;
}

// The denoising fixture: a noisy step image and the long-run solution of the
// same objective (lambda = 0.2), computed once at quarter step sizes.
struct RofFixture {
  Sinogram y;
  Image reference;
  GridSpec grid;
};

RofFixture load_rof() {
  Image input = read_lact_image(std::string(TEST_DATA_DIR) + "/rof_input.lact");
  Image ref = read_lact_image(std::string(TEST_DATA_DIR) + "/rof_reference.lact");
  return {image_as_data(input), ref, GridSpec{input.width, input.height, 1.0}};
}

PdhgParams rof_params(int n_iters) {
  PdhgParams p;
  p.tau = 1.0 / 3.0;  // identity + gradient stack has norm 3
  p.sigma = 1.0 / 3.0;
  p.theta = 1.0;
  p.lambda = 0.2;
  p.n_iters = n_iters;
  return p;
}

}  // namespace

TEST_CASE("dual p update: consistency fixed point and midpoint value") {
  Sinogram p(2, 3, 1.0), ax(2, 3, 1.0), y(2, 3, 1.0);
  for (auto& v : ax.data) v = 0.7;
  y.data = ax.data;
  Sinogram r = dual_update_p(p, ax, y, 0.5);
  for (double v : r.data) CHECK(v == 0.0);

  for (auto& v : p.data) v = 1.0;
  for (auto& v : ax.data) v = 1.0;
  for (auto& v : y.data) v = 0.0;
  r = dual_update_p(p, ax, y, 1.0);
  for (double v : r.data) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("dual p update matches a scalar evaluation of the formula") {
  Rng rng(3);
  Sinogram p = tst::random_sinogram(4, 5, rng);
  Sinogram ax = tst::random_sinogram(4, 5, rng);
  Sinogram y = tst::random_sinogram(4, 5, rng);
  const double sigma = 0.37;
  Sinogram r = dual_update_p(p, ax, y, sigma);
  for (std::size_t i = 0; i < r.data.size(); ++i) {
    const double expect = (p.data[i] + sigma * (ax.data[i] - y.data[i])) / (1.0 + sigma);
    CHECK(r.data[i] == doctest::Approx(expect).epsilon(1e-15));
  }
  Sinogram wrong(4, 6, 1.0);
  CHECK_THROWS_AS(dual_update_p(p, wrong, y, sigma), ShapeMismatch);
}

TEST_CASE("dual q update clamps the isotropic magnitude to lambda") {
  const double lambda = 0.5;
  VectorField q(3, 3), gxb(3, 3);

  SUBCASE("inactive clamp returns s unchanged") {
    gxb.dx[4] = 0.2;
    gxb.dy[4] = 0.1;
    VectorField r = dual_update_q(q, gxb, 1.0, lambda);
    CHECK(r.dx[4] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(r.dy[4] == doctest::Approx(0.1).epsilon(1e-15));
  }

  SUBCASE("active clamp preserves direction at magnitude lambda") {
    gxb.dx[4] = 0.6;
    gxb.dy[4] = 0.8;  // |s| = 1 = 2*lambda
    VectorField r = dual_update_q(q, gxb, 1.0, lambda);
    const double mag = std::sqrt(r.dx[4] * r.dx[4] + r.dy[4] * r.dy[4]);
    CHECK(mag == doctest::Approx(lambda).epsilon(1e-14));
    CHECK(r.dx[4] / r.dy[4] == doctest::Approx(0.6 / 0.8).epsilon(1e-14));
  }

  SUBCASE("zero inputs give zero and lambda = 0 gives a zero field") {
    VectorField r = dual_update_q(q, gxb, 1.0, lambda);
    for (double v : r.dx) CHECK(v == 0.0);
    gxb.dx[0] = 5.0;
    r = dual_update_q(q, gxb, 1.0, 0.0);
    for (double v : r.dx) CHECK(v == 0.0);
  }

  SUBCASE("shape mismatch is rejected") {
    VectorField wrong(3, 4);
    CHECK_THROWS_AS(dual_update_q(q, wrong, 1.0, lambda), ShapeMismatch);
  }
}

TEST_CASE("from_norm satisfies the step-size product condition") {
  PdhgParams p = PdhgParams::from_norm(11.3, 0.01, 20);
  CHECK(p.tau == doctest::Approx(1.0 / 11.3));
  CHECK(p.sigma == doctest::Approx(1.0 / 11.3));
  CHECK(p.tau * p.sigma * 11.3 * 11.3 <= 1.0 + 1e-9);
  CHECK(p.theta == 1.0);
}

TEST_CASE("zero data from a zero start stays at zero") {
  RofFixture fx = load_rof();
  Sinogram zero_y(fx.y.n_angles, fx.y.n_det, 1.0);
  PdhgResult r = pdhg_tv(zero_y, unused_geometry(), rof_params(50), nullptr,
                         OpMode::Identity, fx.grid);
  for (double v : r.x.data) CHECK(v == 0.0);
}

TEST_CASE("denoising run reaches the long-run reference solution") {
  RofFixture fx = load_rof();
  PdhgResult r =
      pdhg_tv(fx.y, unused_geometry(), rof_params(2000), nullptr, OpMode::Identity, fx.grid);
  CHECK(tst::rmse(r.x, fx.reference) <= 1e-3);
  CHECK(r.diag.max_dual_violation <= 1e-12);
  CHECK(r.diag.objective.back() <= r.diag.objective.front());
}

TEST_CASE("a converged saddle point is a fixed point of one manual iteration") {
  RofFixture fx = load_rof();
  PdhgParams pp = rof_params(20000);
  PdhgResult r = pdhg_tv(fx.y, unused_geometry(), pp, nullptr, OpMode::Identity, fx.grid);

  // Reconstruct one iteration from the returned state with x_bar = x
  // (pdhg_tv itself always zero-starts the duals).
  Sinogram ax = image_as_data(r.x);
  Sinogram p2 = dual_update_p(r.p, ax, fx.y, pp.sigma);
  VectorField q2 = dual_update_q(r.q, grad(r.x), pp.sigma, pp.lambda);
  Image dv = divergence(q2);
  double change = 0.0, xnorm = 0.0;
  for (std::size_t k = 0; k < r.x.data.size(); ++k) {
    const double x_new = r.x.data[k] + pp.tau * (dv.data[k] - p2.data[k]);
    change += (x_new - r.x.data[k]) * (x_new - r.x.data[k]);
    xnorm += r.x.data[k] * r.x.data[k];
  }
  CHECK(std::sqrt(change) <= 1e-9 * std::sqrt(xnorm));
}

TEST_CASE("tomography mode reaches a small residual on exact data") {
  Image ph = make_phantom(PhantomKind::SheppLogan, 16);
  ph.unit = Unit::Attenuation;
  ScanGeometry g = build_geometry(BeamType::Parallel, 0.0, kPi, 8, 24, 1.0, 0, 0, 12.0);
  Sinogram y = forward_project(ph, g);
  GridSpec grid{16, 16, 1.0};
  const double L = operator_norm(g, grid).value;
  PdhgParams p = PdhgParams::from_norm(L, 1e-3, 500);
  PdhgResult r = pdhg_tv(y, g, p, nullptr, OpMode::Tomography, grid);
  // measured 3.3e-4 at calibration time; gate holds 30x slack
  CHECK(r.diag.residual.back() <= 0.01);
  CHECK(r.diag.objective.back() <= r.diag.objective.front());
  CHECK(r.diag.max_dual_violation <= 1e-12);
}

TEST_CASE("theta = 0 degrades but stays finite") {
  RofFixture fx = load_rof();
  PdhgParams p = rof_params(1000);
  p.theta = 0.0;
  PdhgResult r = pdhg_tv(fx.y, unused_geometry(), p, nullptr, OpMode::Identity, fx.grid);
  CHECK(all_finite(r.x.data));
}

TEST_CASE("scaling data and lambda together scales the solution") {
  RofFixture fx = load_rof();
  const double c = 3.7;
  PdhgParams p1 = rof_params(500);
  PdhgParams p2 = p1;
  p2.lambda = c * p1.lambda;
  Sinogram cy = fx.y;
  for (auto& v : cy.data) v *= c;
  PdhgResult r1 = pdhg_tv(fx.y, unused_geometry(), p1, nullptr, OpMode::Identity, fx.grid);
  PdhgResult r2 = pdhg_tv(cy, unused_geometry(), p2, nullptr, OpMode::Identity, fx.grid);
  for (std::size_t i = 0; i < r1.x.data.size(); ++i) {
    const double expect = c * r1.x.data[i];
    CHECK(std::abs(r2.x.data[i] - expect) <= 1e-8 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("divergent step sizes abort with the iteration index") {
  RofFixture fx = load_rof();
  PdhgParams p = rof_params(500);
  p.tau = 1e8;
  p.sigma = 1e8;
  try {
    pdhg_tv(fx.y, unused_geometry(), p, nullptr, OpMode::Identity, fx.grid);
    FAIL("expected NonFinite");
  } catch (const NonFinite& e) {
    CHECK(e.component() == "variational");
    CHECK(std::string(e.what()).find("iteration") != std::string::npos);
  }
}

TEST_CASE("zero iterations return the warm start unchanged") {
  RofFixture fx = load_rof();
  Rng rng(8);
  Image warm = tst::random_image(fx.grid.width, fx.grid.height, rng);
  PdhgResult r = pdhg_tv(fx.y, unused_geometry(), rof_params(0), &warm, OpMode::Identity,
                         fx.grid);
  CHECK(r.x.data == warm.data);
}

TEST_CASE("the literal pseudocode warm start seeds only the extrapolated variable") {
  RofFixture fx = load_rof();
  Rng rng(9);
  Image warm = tst::random_image(fx.grid.width, fx.grid.height, rng);
  PdhgParams p = rof_params(1);
  p.warm_start_bar_only = true;
  PdhgResult lit = pdhg_tv(fx.y, unused_geometry(), p, &warm, OpMode::Identity, fx.grid);
  p.warm_start_bar_only = false;
  PdhgResult full = pdhg_tv(fx.y, unused_geometry(), p, &warm, OpMode::Identity, fx.grid);
  CHECK(all_finite(lit.x.data));
  // the two readings genuinely differ after one iteration
  CHECK(tst::rmse(lit.x, full.x) > 0.0);
}

TEST_CASE("warm start shape and finiteness are validated") {
  RofFixture fx = load_rof();
  Image wrong(fx.grid.width + 1, fx.grid.height);
  CHECK_THROWS_AS(pdhg_tv(fx.y, unused_geometry(), rof_params(5), &wrong, OpMode::Identity,
                          fx.grid),
                  ShapeMismatch);
  Image bad(fx.grid.width, fx.grid.height);
  bad.data[0] = std::nan("");
  CHECK_THROWS_AS(
      pdhg_tv(fx.y, unused_geometry(), rof_params(5), &bad, OpMode::Identity, fx.grid),
      NonFinite);
}

TEST_CASE("the default lambda heuristic is positive and scale-invariant") {
  Image ph = make_phantom(PhantomKind::SheppLogan, 32);
  ph.unit = Unit::Attenuation;
  ScanGeometry g = build_geometry(BeamType::Parallel, 0.0, kPi, 12, 48, 1.0, 0, 0, 24.0);
  Sinogram y = forward_project(ph, g);
  const double lam = default_tv_lambda(y, ph);
  CHECK(lam > 0.0);
  Sinogram cy = y;
  for (auto& v : cy.data) v *= 2.0;
  Image cph = ph;
  for (auto& v : cph.data) v *= 2.0;
  CHECK(default_tv_lambda(cy, cph) == doctest::Approx(lam).epsilon(1e-12));
}
