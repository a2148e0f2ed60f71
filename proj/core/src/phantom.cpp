#include "lact/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lact/errors.hpp"
#include "lact/rng.hpp"

namespace lact {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Ellipse {
  double value;    // additive amplitude (SheppLogan) or paint value (cardiac)
  double a, b;     // semi-axes in [-1, 1] coordinates
  double x0, y0;   // center
  double phi;      // rotation, radians, counterclockwise
};

bool inside(const Ellipse& e, double x, double y) {
  const double ct = std::cos(e.phi);
  const double st = std::sin(e.phi);
  const double dx = x - e.x0;
  const double dy = y - e.y0;
  const double xr = dx * ct + dy * st;
  const double yr = -dx * st + dy * ct;
  return (xr / e.a) * (xr / e.a) + (yr / e.b) * (yr / e.b) <= 1.0;
}

double deg(double d) { return d * kPi / 180.0; }

// Standard 10-ellipse head phantom; amplitudes halved so the head interior
// sits at 0.51 and the skull rim at 1.0.
std::vector<Ellipse> shepp_logan_shapes() {
  return {
      {2.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0},
      {-0.98, 0.6624, 0.8740, 0.00, -0.0184, 0.0},
      {-0.02, 0.1100, 0.3100, 0.22, 0.0000, deg(-18.0)},
      {-0.02, 0.1600, 0.4100, -0.22, 0.0000, deg(18.0)},
      {0.01, 0.2100, 0.2500, 0.00, 0.3500, 0.0},
      {0.01, 0.0460, 0.0460, 0.00, 0.1000, 0.0},
      {0.01, 0.0460, 0.0460, 0.00, -0.1000, 0.0},
      {0.01, 0.0460, 0.0230, -0.08, -0.6050, 0.0},
      {0.01, 0.0230, 0.0230, 0.00, -0.6060, 0.0},
      {0.01, 0.0230, 0.0460, 0.06, -0.6050, 0.0},
  };
}

// Painted back-to-front: torso, myocardium ring (outer ellipse with the
// chambers painted over it), then thin bright vessels. Jitter keeps distinct
// seeds visually distinct while preserving the layout.
std::vector<Ellipse> cardiac_shapes(std::uint64_t seed) {
  Rng rng(Rng::mix(seed, 0x636172));
  auto j = [&](double amp) { return amp * (2.0 * rng.uniform() - 1.0); };

  std::vector<Ellipse> shapes;
  shapes.push_back({0.25, 0.88, 0.92, j(0.02), j(0.02), j(deg(4.0))});

  const double mx = -0.05 + j(0.05);
  const double my = 0.02 + j(0.05);
  const double mphi = j(deg(15.0));
  shapes.push_back({0.55, 0.46 + j(0.03), 0.60 + j(0.03), mx, my, mphi});

  const double cm = std::cos(mphi);
  const double sm = std::sin(mphi);
  auto place = [&](double ox, double oy, double a, double b, double dphi) {
    shapes.push_back({0.45, a, b, mx + ox * cm - oy * sm, my + ox * sm + oy * cm,
                      mphi + dphi});
  };
  place(-0.11 + j(0.02), -0.03 + j(0.02), 0.20 + j(0.02), 0.33 + j(0.02),
        j(deg(6.0)));
  place(0.17 + j(0.02), 0.05 + j(0.02), 0.13 + j(0.02), 0.26 + j(0.02),
        j(deg(6.0)));

  const int n_vessels = 2 + static_cast<int>(rng.next_u64() % 2);
  for (int k = 0; k < n_vessels; ++k) {
    const double al = 2.0 * kPi * rng.uniform();
    const double rad = 0.70 + 0.08 * rng.uniform();
    shapes.push_back({0.90, 0.015 + 0.01 * rng.uniform(),
                      0.10 + 0.08 * rng.uniform(), rad * std::cos(al),
                      rad * std::sin(al), al + kPi / 2.0 + j(deg(10.0))});
  }
  return shapes;
}

}  // namespace

Image make_phantom(PhantomKind kind, int size, std::uint64_t seed,
                   double pixel_size) {
  if (size < 8) throw InvalidConfig("simulate", "phantom size must be >= 8");
  if (!(pixel_size > 0.0))
    throw InvalidConfig("simulate", "phantom pixel_size must be > 0");

  const bool additive = kind == PhantomKind::SheppLogan;
  const std::vector<Ellipse> shapes =
      additive ? shepp_logan_shapes() : cardiac_shapes(seed);

  Image img(size, size, pixel_size, Unit::Normalized);
  const int ss = 4;  // subpixel grid; averaging tames edge aliasing
  for (int i = 0; i < size; ++i) {
    for (int c = 0; c < size; ++c) {
      double acc = 0.0;
      for (int b = 0; b < ss; ++b) {
        const double ii = i + (b + 0.5) / ss - 0.5;
        const double y = (size - 1.0 - 2.0 * ii) / size;
        for (int a = 0; a < ss; ++a) {
          const double jj = c + (a + 0.5) / ss - 0.5;
          const double x = (2.0 * jj - size + 1.0) / size;
          double v = 0.0;
          for (const Ellipse& e : shapes) {
            if (!inside(e, x, y)) continue;
            if (additive)
              v += e.value;
            else
              v = e.value;
          }
          acc += additive ? 0.5 * v : v;
        }
      }
      img.at(i, c) = std::clamp(acc / (ss * ss), 0.0, 1.0);
    }
  }
  return img;
}

}  // namespace lact
