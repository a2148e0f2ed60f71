#include "lact/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <json.hpp>

#include "lact/errors.hpp"

namespace lact {

namespace {

void check_pair(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b))
    throw ShapeMismatch("metrics", std::string(what) + ": image shapes differ");
  if (!all_finite(a.data) || !all_finite(b.data))
    throw NonFinite("metrics", std::string(what) + ": non-finite pixel values");
}

void check_range(double data_range, const char* what) {
  if (!(data_range > 0.0) || !std::isfinite(data_range))
    throw OutOfRange("metrics", std::string(what) + ": data_range must be > 0");
}

std::vector<double> gaussian_window(int half, double sigma) {
  const int n = 2 * half + 1;
  std::vector<double> w(static_cast<std::size_t>(n) * n);
  double sum = 0.0;
  for (int i = -half; i <= half; ++i)
    for (int j = -half; j <= half; ++j) {
      const double v = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
      w[static_cast<std::size_t>(i + half) * n + (j + half)] = v;
      sum += v;
    }
  for (double& v : w) v /= sum;
  return w;
}

std::vector<double> lbp_histogram(const Image& img) {
  static const int off[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1},
                                {1, 1},   {1, 0},  {1, -1}, {0, -1}};
  std::vector<double> hist(256, 0.0);
  for (int r = 1; r + 1 < img.height; ++r)
    for (int c = 1; c + 1 < img.width; ++c) {
      const double center = img.at(r, c);
      int code = 0;
      for (int k = 0; k < 8; ++k)
        if (img.at(r + off[k][0], c + off[k][1]) >= center) code |= 1 << k;
      hist[static_cast<std::size_t>(code)] += 1.0;
    }
  const double total = static_cast<double>(img.height - 2) * (img.width - 2);
  for (double& v : hist) v /= total;
  return hist;
}

}  // namespace

double psnr(const Image& img, const Image& reference, double data_range) {
  check_pair(img, reference, "psnr");
  check_range(data_range, "psnr");
  double mse = 0.0;
  for (std::size_t k = 0; k < img.data.size(); ++k) {
    const double d = img.data[k] - reference.data[k];
    mse += d * d;
  }
  mse /= static_cast<double>(img.data.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(data_range * data_range / mse);
}

Image ssim_map(const Image& img, const Image& reference, double data_range) {
  check_pair(img, reference, "ssim");
  check_range(data_range, "ssim");
  constexpr int kHalf = 5;  // 11x11 window
  if (img.width < 2 * kHalf + 1 || img.height < 2 * kHalf + 1)
    throw ImageTooSmall("ssim needs both dimensions >= 11");

  static const std::vector<double> w = gaussian_window(kHalf, 1.5);
  const double c1 = 0.01 * data_range * 0.01 * data_range;
  const double c2 = 0.03 * data_range * 0.03 * data_range;

  Image map(img.width - 2 * kHalf, img.height - 2 * kHalf, img.pixel_size);
  for (int r = kHalf; r + kHalf < img.height; ++r) {
    for (int c = kHalf; c + kHalf < img.width; ++c) {
      double mx = 0.0, my = 0.0, xx = 0.0, yy = 0.0, xy = 0.0;
      std::size_t wi = 0;
      for (int i = -kHalf; i <= kHalf; ++i)
        for (int j = -kHalf; j <= kHalf; ++j, ++wi) {
          const double a = img.at(r + i, c + j);
          const double b = reference.at(r + i, c + j);
          mx += w[wi] * a;
          my += w[wi] * b;
          xx += w[wi] * a * a;
          yy += w[wi] * b * b;
          xy += w[wi] * a * b;
        }
      const double vx = xx - mx * mx;
      const double vy = yy - my * my;
      const double cov = xy - mx * my;
      map.at(r - kHalf, c - kHalf) = ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
                                     ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
  }
  return map;
}

double ssim(const Image& img, const Image& reference, double data_range) {
  const Image map = ssim_map(img, reference, data_range);
  double acc = 0.0;
  for (double v : map.data) acc += v;
  return acc / static_cast<double>(map.data.size());
}

double histogram_correlation(const Image& img, const Image& reference, int n_bins,
                             double lo, double hi) {
  if (!all_finite(img.data) || !all_finite(reference.data))
    throw NonFinite("metrics", "histogram_correlation: non-finite pixel values");
  if (n_bins < 2)
    throw InvalidConfig("metrics", "histogram_correlation needs n_bins >= 2");
  if (!(hi > lo))
    throw InvalidConfig("metrics", "histogram_correlation needs hi > lo");

  auto fill = [&](const Image& im) {
    std::vector<double> h(static_cast<std::size_t>(n_bins), 0.0);
    for (double v : im.data) {
      int b = static_cast<int>((v - lo) / (hi - lo) * n_bins);
      b = std::clamp(b, 0, n_bins - 1);
      h[static_cast<std::size_t>(b)] += 1.0;
    }
    return h;
  };
  const std::vector<double> h1 = fill(img);
  const std::vector<double> h2 = fill(reference);

  const double n = static_cast<double>(n_bins);
  double m1 = 0.0, m2 = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    m1 += h1[b];
    m2 += h2[b];
  }
  m1 /= n;
  m2 /= n;
  double s11 = 0.0, s22 = 0.0, s12 = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    const double d1 = h1[b] - m1;
    const double d2 = h2[b] - m2;
    s11 += d1 * d1;
    s22 += d2 * d2;
    s12 += d1 * d2;
  }
  if (s11 == 0.0 || s22 == 0.0)
    throw DegenerateHistogram("a histogram has zero variance; correlation undefined");
  return s12 / std::sqrt(s11 * s22);
}

double lbp_texture_similarity(const Image& img, const Image& reference) {
  check_pair(img, reference, "lbp_texture_similarity");
  if (img.width < 3 || img.height < 3)
    throw ImageTooSmall("local binary patterns need both dimensions >= 3");
  const std::vector<double> p = lbp_histogram(img);
  const std::vector<double> q = lbp_histogram(reference);
  double tv = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) tv += std::abs(p[k] - q[k]);
  return 0.5 * tv;
}

MetricsReport evaluate_all(const Image& img, const Image& reference, double data_range) {
  MetricsReport report;
  report.psnr_db = psnr(img, reference, data_range);
  report.ssim = ssim(img, reference, data_range);
  report.hc = histogram_correlation(img, reference, 256, 0.0, data_range);
  report.lbp_ts = lbp_texture_similarity(img, reference);
  report.data_range = data_range;
  return report;
}

std::string metrics_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  if (std::isinf(report.psnr_db))
    j["psnr_db"] = "inf";
  else
    j["psnr_db"] = report.psnr_db;
  j["ssim"] = report.ssim;
  j["hc"] = report.hc;
  j["lbp_ts"] = report.lbp_ts;
  j["data_range"] = report.data_range;
  return j.dump(2) + "\n";
}

}  // namespace lact
