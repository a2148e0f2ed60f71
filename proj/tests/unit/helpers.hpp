#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "lact/rng.hpp"
#include "lact/types.hpp"

namespace tst {

inline lact::Image random_image(int w, int h, lact::Rng& rng, double lo = 0.0,
                                double hi = 1.0) {
  lact::Image img(w, h);
  for (auto& v : img.data) v = lo + (hi - lo) * rng.uniform();
  return img;
}

inline lact::Sinogram random_sinogram(int na, int nd, lact::Rng& rng) {
  lact::Sinogram s(na, nd);
  for (auto& v : s.data) v = rng.uniform();
  return s;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double rmse(const lact::Image& a, const lact::Image& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(a.data.size()));
}

// Unique writable directory under the system temp root; left in place for
// post-mortem inspection.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static int counter = 0;
  auto p = std::filesystem::temp_directory_path() /
           ("lact_tests_" + std::to_string(::getpid())) / (tag + "_" + std::to_string(counter++));
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace tst
