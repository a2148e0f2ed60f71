#pragma once

#include <string>

#include "lact/types.hpp"

namespace lact {

/// 10*log10(data_range^2 / mse); identical images give +infinity.
double psnr(const Image& img, const Image& reference, double data_range = 1.0);

/// Local structural similarity over all fully interior 11x11 windows
/// (Gaussian weights, sigma 1.5; stabilizers (0.01*L)^2 and (0.03*L)^2).
/// The map has shape (height-10) x (width-10); images smaller than the
/// window are rejected.
Image ssim_map(const Image& img, const Image& reference, double data_range = 1.0);

/// Mean of ssim_map.
double ssim(const Image& img, const Image& reference, double data_range = 1.0);

/// Pearson correlation of the two intensity histograms, binned over
/// [lo, hi] with out-of-range values clipped into the edge bins. Throws
/// DegenerateHistogram when either histogram has zero variance.
double histogram_correlation(const Image& img, const Image& reference,
                             int n_bins = 256, double lo = 0.0, double hi = 1.0);

/// Texture distance via 8-neighbor radius-1 local binary patterns on
/// interior pixels (bit set when neighbor >= center): total-variation
/// distance in [0, 1] between the two normalized 256-bin code histograms.
/// 0 means identical code distributions; smaller is more similar.
double lbp_texture_similarity(const Image& img, const Image& reference);

struct MetricsReport {
  double psnr_db = 0.0;
  double ssim = 0.0;
  double hc = 0.0;
  double lbp_ts = 0.0;
  double data_range = 1.0;
};

/// All four metrics against a reference; the histogram window is
/// [0, data_range].
MetricsReport evaluate_all(const Image& img, const Image& reference,
                           double data_range = 1.0);

/// Report as a JSON object with keys psnr_db, ssim, hc, lbp_ts, data_range.
/// An infinite PSNR serializes as the string "inf".
std::string metrics_json(const MetricsReport& report);

}  // namespace lact
