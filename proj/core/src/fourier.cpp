#include "lact/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <sstream>

namespace lact {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Deterministic plans only: FFTW_ESTIMATE picks the same algorithm for a
// given size every run, which keeps seeded pipelines byte-reproducible.
void run_dft2(int height, int width, fftw_complex* in, fftw_complex* out, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_2d(height, width, in, out, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

ComplexGrid centered_dft2(const Image& img) {
  if (img.width < 1 || img.height < 1)
    throw ShapeMismatch("fusion", "centered_dft2 needs a non-empty image");
  const int W = img.width, H = img.height;
  const int cx = W / 2, cy = H / 2;

  fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(W) * H);
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(W) * H);
  for (std::size_t i = 0; i < img.size(); ++i) {
    in[i][0] = img.data[i];
    in[i][1] = 0.0;
  }
  run_dft2(H, W, in, out, FFTW_FORWARD);

  ComplexGrid g(W, H);
  const double scale = 1.0 / std::sqrt(static_cast<double>(W) * H);
  for (int r = 0; r < H; ++r) {
    const int rr = (r + H - cy) % H;  // centered row r holds raw frequency row (r - cy) mod H
    for (int c = 0; c < W; ++c) {
      const int cc = (c + W - cx) % W;
      const auto& v = out[static_cast<std::size_t>(rr) * W + cc];
      g.at(r, c) = {v[0] * scale, v[1] * scale};
    }
  }
  fftw_free(in);
  fftw_free(out);
  return g;
}

Image inverse_centered_dft2(const ComplexGrid& grid) {
  if (grid.width < 1 || grid.height < 1)
    throw ShapeMismatch("fusion", "inverse_centered_dft2 needs a non-empty grid");
  const int W = grid.width, H = grid.height;
  const int cx = W / 2, cy = H / 2;

  fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(W) * H);
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(W) * H);
  for (int r = 0; r < H; ++r) {
    const int rr = (r + H - cy) % H;
    for (int c = 0; c < W; ++c) {
      const int cc = (c + W - cx) % W;
      const auto& v = grid.at(r, c);
      auto& dst = in[static_cast<std::size_t>(rr) * W + cc];
      dst[0] = v.real();
      dst[1] = v.imag();
    }
  }
  run_dft2(H, W, in, out, FFTW_BACKWARD);

  const double scale = 1.0 / std::sqrt(static_cast<double>(W) * H);
  double grid_norm = 0.0;
  for (const auto& v : grid.data) grid_norm += std::norm(v);
  grid_norm = std::sqrt(grid_norm);

  double imag2 = 0.0;
  Image img(W, H);
  for (std::size_t i = 0; i < img.size(); ++i) {
    img.data[i] = out[i][0] * scale;
    const double im = out[i][1] * scale;
    imag2 += im * im;
  }
  fftw_free(in);
  fftw_free(out);

  const double imag_norm = std::sqrt(imag2);
  if (imag_norm > 1e-9 * grid_norm) {
    std::ostringstream msg;
    msg << "imaginary residue " << imag_norm << " exceeds 1e-9 * " << grid_norm;
    throw NonNegligibleImaginary(msg.str());
  }
  return img;
}

}  // namespace lact
