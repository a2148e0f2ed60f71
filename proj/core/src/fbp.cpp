#include "lact/fbp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

namespace lact {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int next_pow2(int n) {
  int m = 1;
  while (m < n) m *= 2;
  return m;
}

// Filter every view of `sino` in place through a padded DFT.
void filter_views(Sinogram& sino, FbpFilter filter) {
  const int n_det = sino.n_det;
  const int m = 2 * next_pow2(n_det);
  const std::vector<double> response = ramp_filter_response(m, sino.det_spacing, filter);

  fftw_complex* buf = fftw_alloc_complex(m);
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_1d(m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(m, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (int a = 0; a < sino.n_angles; ++a) {
    for (int i = 0; i < m; ++i) {
      buf[i][0] = (i < n_det) ? sino.at(a, i) : 0.0;
      buf[i][1] = 0.0;
    }
    fftw_execute(fwd);
    for (int i = 0; i < m; ++i) {
      buf[i][0] *= response[i];
      buf[i][1] *= response[i];
    }
    fftw_execute(bwd);
    // FFTW's backward transform is unnormalized; the det_spacing factor turns
    // the discrete convolution into a line-integral approximation.
    const double scale = sino.det_spacing / m;
    for (int i = 0; i < n_det; ++i) sino.at(a, i) = buf[i][0] * scale;
  }
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  fftw_free(buf);
}

Image backproject_parallel(const Sinogram& q, const ScanGeometry& geom, const GridSpec& grid) {
  Image out(grid.width, grid.height, grid.pixel_size, Unit::Attenuation);
  const double cx = (grid.width - 1) / 2.0;
  const double cy = (grid.height - 1) / 2.0;
  const double s0 = -(geom.n_det - 1) / 2.0 * geom.det_spacing;
  const double arc = geom.arc();
  double weight = geom.angle_step();
  if (arc > kPi + 1e-9) weight *= kPi / arc;  // full/over-half rotations measure rays twice

  for (int a = 0; a < geom.n_angles(); ++a) {
    const double sin_t = std::sin(geom.angles[a]);
    const double cos_t = std::cos(geom.angles[a]);
    for (int row = 0; row < grid.height; ++row) {
      const double y = (cy - row) * grid.pixel_size;
      for (int col = 0; col < grid.width; ++col) {
        const double x = (col - cx) * grid.pixel_size;
        const double s = -x * sin_t + y * cos_t;
        const double f = (s - s0) / geom.det_spacing;
        const int i0 = static_cast<int>(std::floor(f));
        const double w = f - i0;
        double v = 0.0;
        if (i0 >= 0 && i0 < geom.n_det) v += (1.0 - w) * q.at(a, i0);
        if (i0 + 1 >= 0 && i0 + 1 < geom.n_det) v += w * q.at(a, i0 + 1);
        out.at(row, col) += v;
      }
    }
  }
  for (auto& v : out.data) v *= weight;

  const double r2 = geom.fov_radius * geom.fov_radius;
  for (int row = 0; row < grid.height; ++row) {
    const double y = (cy - row) * grid.pixel_size;
    for (int col = 0; col < grid.width; ++col) {
      const double x = (col - cx) * grid.pixel_size;
      if (x * x + y * y > r2) out.at(row, col) = 0.0;
    }
  }
  return out;
}

// Resample an equiangular fan sinogram onto a parallel (theta, s) grid with
// bilinear interpolation; theta = beta + gamma, s = src_to_origin * sin(gamma).
void rebin_fan_to_parallel(const Sinogram& fan, const ScanGeometry& geom,
                           Sinogram& par, ScanGeometry& par_geom) {
  const int n_det = geom.n_det;
  const double gamma_max = (n_det - 1) / 2.0 * geom.det_spacing;
  const double s_max = geom.src_to_origin * std::sin(gamma_max);
  const double beta0 = geom.angles.front();
  const double beta_step = geom.angle_step();
  const double beta_last = geom.angles.back();

  const double theta_lo = beta0 - gamma_max;
  const double theta_hi = beta_last + geom.angle_step() + gamma_max;
  const int n_theta = geom.n_angles() + 2 * static_cast<int>(std::ceil(gamma_max / beta_step));

  // Built by hand: the rebinned span may slightly exceed a full rotation,
  // which the public constructor rejects.
  par_geom = ScanGeometry{};
  par_geom.beam = BeamType::Parallel;
  par_geom.n_det = n_det;
  par_geom.det_spacing = 2.0 * s_max / (n_det - 1);
  par_geom.fov_radius = geom.fov_radius;
  par_geom.angles.resize(n_theta);
  const double theta_step = (theta_hi - theta_lo) / n_theta;
  for (int k = 0; k < n_theta; ++k) par_geom.angles[k] = theta_lo + theta_step * k;
  par = Sinogram(n_theta, n_det, par_geom.det_spacing);
  par.geometry_id = par_geom.id();

  const double s0 = -(n_det - 1) / 2.0 * par_geom.det_spacing;
  for (int a = 0; a < n_theta; ++a) {
    const double theta = par_geom.angles[a];
    for (int k = 0; k < n_det; ++k) {
      const double s = s0 + k * par_geom.det_spacing;
      const double gamma = std::asin(std::clamp(s / geom.src_to_origin, -1.0, 1.0));
      const double beta = theta - gamma;
      const double fb = (beta - beta0) / beta_step;
      const double fg = gamma / geom.det_spacing + (n_det - 1) / 2.0;
      const int b0 = static_cast<int>(std::floor(fb));
      const int g0 = static_cast<int>(std::floor(fg));
      const double wb = fb - b0;
      const double wg = fg - g0;
      double v = 0.0;
      for (int db = 0; db <= 1; ++db) {
        const int b = b0 + db;
        if (b < 0 || b >= fan.n_angles) continue;
        const double wbeta = db ? wb : 1.0 - wb;
        for (int dg = 0; dg <= 1; ++dg) {
          const int g = g0 + dg;
          if (g < 0 || g >= n_det) continue;
          v += wbeta * (dg ? wg : 1.0 - wg) * fan.at(b, g);
        }
      }
      par.at(a, k) = v;
    }
  }
}

}  // namespace

std::vector<double> ramp_filter_response(int padded_len, double det_spacing, FbpFilter filter) {
  if (padded_len < 2) throw InvalidConfig("tomo_core", "filter length must be >= 2");
  if (!(det_spacing > 0.0)) throw InvalidConfig("tomo_core", "det_spacing must be positive");
  const int m = padded_len;
  // Band-limited ramp kernel in the spatial domain, wrapped for the DFT.
  std::vector<double> h(m, 0.0);
  const double inv_ds2 = 1.0 / (det_spacing * det_spacing);
  h[0] = 0.25 * inv_ds2;
  for (int k = 1; k < m / 2; k += 2) {
    const double v = -inv_ds2 / (kPi * kPi * k * k);
    h[k] = v;
    h[m - k] = v;
  }

  // Real DFT of the kernel evaluated directly (h is even, so the response is
  // a cosine sum); done once per call, m is small.
  std::vector<double> resp(m, 0.0);
  for (int f = 0; f < m; ++f) {
    double acc = h[0];
    for (int k = 1; k <= m / 2; ++k) {
      const double c = std::cos(2.0 * kPi * f * k / m);
      acc += (k == m / 2 ? 1.0 : 2.0) * h[k] * c;
    }
    resp[f] = acc;
  }

  if (filter != FbpFilter::RamLak) {
    for (int f = 0; f < m; ++f) {
      // Normalized frequency in [-0.5, 0.5); r = |nu| / nyquist in [0, 1].
      double nu = static_cast<double>(f) / m;
      if (nu >= 0.5) nu -= 1.0;
      const double r = 2.0 * std::abs(nu);
      double win = 1.0;
      if (filter == FbpFilter::SheppLogan) {
        const double x = 0.5 * kPi * r;
        win = (x < 1e-12) ? 1.0 : std::sin(x) / x;
      } else if (filter == FbpFilter::Hann) {
        win = 0.5 * (1.0 + std::cos(kPi * r));
      }
      resp[f] *= win;
    }
  }
  return resp;
}

Image fbp(const Sinogram& sino, const ScanGeometry& geom, FbpFilter filter,
          const GridSpec& grid) {
  if (sino.n_angles != geom.n_angles() || sino.n_det != geom.n_det)
    throw GeometryMismatch("sinogram shape does not match the geometry");
  if (sino.geometry_id != 0 && sino.geometry_id != geom.id())
    throw GeometryMismatch("sinogram was produced by a different geometry");
  if (grid.width < 1 || grid.height < 1)
    throw ShapeMismatch("tomo_core", "fbp target grid is empty");
  if (0.5 * grid.pixel_size * std::max(grid.width, grid.height) >
      geom.fov_radius * (1.0 + 1e-12))
    throw GeometryMismatch("target grid extends beyond the field of view");

  if (geom.beam == BeamType::FanEquiangular) {
    Sinogram par;
    ScanGeometry par_geom;
    rebin_fan_to_parallel(sino, geom, par, par_geom);
    filter_views(par, filter);
    return backproject_parallel(par, par_geom, grid);
  }

  Sinogram filtered = sino;
  filter_views(filtered, filter);
  return backproject_parallel(filtered, geom, grid);
}

}  // namespace lact
