#include "lact/psdm.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "lact/errors.hpp"
#include "lact/metrics.hpp"
#include "lact/operator_norm.hpp"
#include "lact/pdhg.hpp"
#include "lact/projector.hpp"
#include "lact/rng.hpp"
#include "lact/sampler.hpp"
#include "lact/wedge.hpp"

namespace lact {

void UnitMap::validate() const {
  if (!(scale != 0.0) || !std::isfinite(scale) || !std::isfinite(offset))
    throw InvalidConfig("pipeline", "unit map needs finite scale != 0");
}

Image UnitMap::to_attenuation(const Image& normalized) const {
  validate();
  Image out = normalized;
  out.unit = Unit::Attenuation;
  for (double& v : out.data) v = scale * v + offset;
  return out;
}

Image UnitMap::to_normalized(const Image& attenuation) const {
  validate();
  Image out = attenuation;
  out.unit = Unit::Normalized;
  for (double& v : out.data) v = (v - offset) / scale;
  return out;
}

namespace {

void validate_config(const PsdmConfig& cfg) {
  cfg.schedule.validate();
  cfg.units.validate();
  if (!(cfg.snr >= 0.0) || !std::isfinite(cfg.snr))
    throw InvalidConfig("pipeline", "snr must be >= 0");
  if (!(cfg.ff_lo >= 0.0) || !(cfg.ff_hi <= 1.0) || !(cfg.ff_lo <= cfg.ff_hi))
    throw InvalidConfig("pipeline", "fusion window needs 0 <= lo <= hi <= 1");
  if (cfg.pdhg_iters < 0)
    throw InvalidConfig("pipeline", "pdhg_iters must be >= 0");
}

double data_residual(const Image& x_att, const Sinogram& y, const ScanGeometry& geom) {
  const Sinogram ax = forward_project(x_att, geom);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < y.data.size(); ++k) {
    const double d = ax.data[k] - y.data[k];
    num += d * d;
    den += y.data[k] * y.data[k];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

}  // namespace

PsdmResult psdm_reconstruct(const Sinogram& y, const ScanGeometry& geom,
                            const ScoreFunction& score, const PsdmConfig& cfg,
                            const GridSpec& grid) {
  validate_config(cfg);
  if (!all_finite(y.data))
    throw NonFinite("pipeline", "measured sinogram contains non-finite values");

  const NoiseSchedule& sched = cfg.schedule;
  const int n_outer = sched.n_steps;

  // Baseline anchor: filtered backprojection in attenuation units, both the
  // spectral-fusion source and the regularization-weight heuristic.
  Image x_lact_att = fbp(y, geom, cfg.filter, grid);
  x_lact_att.unit = Unit::Attenuation;
  const Image x_lact_n = cfg.units.to_normalized(x_lact_att);

  const double lambda =
      cfg.lambda >= 0.0 ? cfg.lambda : default_tv_lambda(y, x_lact_att);

  const OperatorNormResult norm =
      operator_norm(geom, grid, 1e-6, 500, NormTarget::ForwardAndGradient);
  PdhgParams params = PdhgParams::from_norm(norm.value, lambda, cfg.pdhg_iters);
  params.warm_start_bar_only = cfg.warm_start_bar_only;

  FrequencyMask mask;
  bool any_missing = false;
  if (cfg.fuse_enabled) {
    mask = build_missing_wedge_mask(geom, grid.width, grid.height);
    any_missing = mask.fraction() > 0.0;
  }
  const int k_lo = static_cast<int>(std::ceil(cfg.ff_lo * n_outer));
  const int k_hi = static_cast<int>(std::floor(cfg.ff_hi * n_outer));

  Rng rng(cfg.seed);
  Rng* rp = cfg.deterministic ? nullptr : &rng;
  Image x(grid.width, grid.height, grid.pixel_size, Unit::Normalized);
  if (!cfg.deterministic)
    for (double& v : x.data) v = sched.sigma_max * rng.normal();

  PsdmResult result;
  Image x_att(grid.width, grid.height, grid.pixel_size, Unit::Attenuation);

  for (int i = n_outer - 1; i >= 0; --i) {
    const int k = n_outer - 1 - i;
    try {
      if (i >= 1) {
        x = predictor_step(x, score, sched, i, rp, /*stochastic=*/true);
        x = corrector_step(x, score, sched, i - 1, rp, cfg.snr);
      } else {
        x = corrector_step(x, score, sched, 0, rp, cfg.snr);
      }

      bool fused = false;
      if (cfg.fuse_enabled && any_missing && k >= k_lo && k <= k_hi) {
        x = fourier_fuse(x, x_lact_n, mask, cfg.complement_lact);
        ++result.fuse_calls;
        fused = true;
      }

      x_att = cfg.units.to_attenuation(x);
      PdhgResult dc = pdhg_tv(y, geom, params, &x_att, OpMode::Tomography, grid);
      x_att = std::move(dc.x);
      x = cfg.units.to_normalized(x_att);

      result.trace.sigma.push_back(sched.sigma_of(i));
      result.trace.residual.push_back(dc.diag.residual.empty()
                                          ? data_residual(x_att, y, geom)
                                          : dc.diag.residual.back());
      result.trace.fused.push_back(fused ? 1 : 0);
      if (cfg.trace_reference != nullptr)
        result.trace.psnr_db.push_back(psnr(x, *cfg.trace_reference));
    } catch (const NonFinite& e) {
      throw NonFinite("pipeline", "outer step " + std::to_string(k) + ": " + e.what());
    }
  }

  result.x = std::move(x_att);
  result.final_residual = result.trace.residual.back();
  result.lambda = lambda;
  result.op_norm = norm.value;
  return result;
}

}  // namespace lact
