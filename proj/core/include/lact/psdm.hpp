#pragma once

#include <cstdint>
#include <vector>

#include "lact/fbp.hpp"
#include "lact/geometry.hpp"
#include "lact/schedule.hpp"
#include "lact/score.hpp"
#include "lact/types.hpp"

namespace lact {

/// Affine map between the prior's normalized units and attenuation:
/// attenuation = scale * normalized + offset.
struct UnitMap {
  double scale = 0.02;  // 1/mm per normalized unit
  double offset = 0.0;

  void validate() const;
  Image to_attenuation(const Image& normalized) const;
  Image to_normalized(const Image& attenuation) const;
};

struct PsdmConfig {
  NoiseSchedule schedule;  // outer step count = schedule.n_steps
  double snr = 0.16;       // corrector signal-to-noise
  // Spectral fusion window as fractions of the outer step count: fusion runs
  // on 0-based outer steps k with ceil(lo*I) <= k <= floor(hi*I).
  double ff_lo = 0.4;
  double ff_hi = 0.8;
  bool fuse_enabled = true;
  bool complement_lact = false;  // weight the measured branch by 1 - mask
  int pdhg_iters = 30;           // inner data-consistency iterations
  double lambda = -1.0;          // < 0: heuristic from the baseline image
  bool warm_start_bar_only = false;
  UnitMap units;
  // Baseline anchor filter. Hann by default: the anchor's spectrum is reused
  // by the fusion step, and the smoother window keeps amplified noise out of
  // the measured band.
  FbpFilter filter = FbpFilter::Hann;
  bool deterministic = false;  // zero init and no injected noise anywhere
  std::uint64_t seed = 0;
  const Image* trace_reference = nullptr;  // optional, adds psnr to the trace
};

struct PsdmTrace {
  std::vector<double> sigma;        // noise level handled by each outer step
  std::vector<double> residual;     // relative data residual after consistency
  std::vector<std::uint8_t> fused;  // 1 where the spectral fusion ran
  std::vector<double> psnr_db;      // filled only when trace_reference is set
};

struct PsdmResult {
  Image x;  // attenuation units
  double final_residual = 0.0;
  int fuse_calls = 0;
  double lambda = 0.0;   // regularization weight actually used
  double op_norm = 0.0;  // measured norm of the stacked (projector, gradient)
  PsdmTrace trace;
};

/// Diffusion-regularized reconstruction. Each outer step denoises one
/// schedule level (predictor plus corrector; the final step is
/// corrector-only), optionally replaces the missing spectral wedge with the
/// current sample inside the fusion window, and re-anchors to the data with a
/// dual-reset, primal-warm-started TV solve. The prior operates in normalized
/// units; data consistency runs in attenuation units via cfg.units.
PsdmResult psdm_reconstruct(const Sinogram& y, const ScanGeometry& geom,
                            const ScoreFunction& score, const PsdmConfig& cfg,
                            const GridSpec& grid);

}  // namespace lact
