#include "lact/gradient.hpp"

namespace lact {

VectorField grad(const Image& img) {
  VectorField g(img.width, img.height);
  const int W = img.width, H = img.height;
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * W + c;
      if (c + 1 < W) g.dx[i] = img.at(r, c + 1) - img.at(r, c);
      if (r + 1 < H) g.dy[i] = img.at(r + 1, c) - img.at(r, c);
    }
  }
  return g;
}

Image divergence(const VectorField& v) {
  Image out(v.width, v.height);
  const int W = v.width, H = v.height;
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * W + c;
      double d = 0.0;
      if (c + 1 < W) d += v.dx[i];
      if (c > 0) d -= v.dx[i - 1];
      if (r + 1 < H) d += v.dy[i];
      if (r > 0) d -= v.dy[i - W];
      out.data[i] = d;
    }
  }
  return out;
}

}  // namespace lact
