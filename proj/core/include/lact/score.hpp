#pragma once

#include <string>
#include <vector>

#include "lact/schedule.hpp"
#include "lact/types.hpp"

namespace lact {

/// Score of the sigma(t)-smoothed prior, grad_x log p_t(x).
class ScoreFunction {
public:
  virtual ~ScoreFunction() = default;
  virtual Image evaluate(const Image& x, double t) const = 0;
};

/// Point-mass prior at x_true: score = (x_true - x) / sigma(t)^2.
Image oracle_score(const Image& x, const Image& x_true, const NoiseSchedule& sched, double t);

struct GmmComponent {
  double weight = 0.0;
  Image mean;
  double std_dev = 0.0;  // isotropic base standard deviation
};

/// Isotropic Gaussian mixture prior; under noise level sigma(t) component k
/// has covariance (std_dev_k^2 + sigma(t)^2) I.
struct GmmPrior {
  std::vector<GmmComponent> components;
  void validate() const;
};

/// Mixture score with log-space softmax responsibilities (stable for widely
/// separated components).
Image gmm_score(const Image& x, const GmmPrior& prior, const NoiseSchedule& sched, double t);

class OracleScore final : public ScoreFunction {
public:
  OracleScore(Image x_true, NoiseSchedule sched) : x_true_(std::move(x_true)), sched_(sched) {}
  Image evaluate(const Image& x, double t) const override {
    return oracle_score(x, x_true_, sched_, t);
  }

private:
  Image x_true_;
  NoiseSchedule sched_;
};

class GmmScore final : public ScoreFunction {
public:
  GmmScore(GmmPrior prior, NoiseSchedule sched) : prior_(std::move(prior)), sched_(sched) {
    prior_.validate();
  }
  Image evaluate(const Image& x, double t) const override {
    return gmm_score(x, prior_, sched_, t);
  }
  const GmmPrior& prior() const { return prior_; }

private:
  GmmPrior prior_;
  NoiseSchedule sched_;
};

class ZeroScore final : public ScoreFunction {
public:
  Image evaluate(const Image& x, double /*t*/) const override {
    return Image(x.width, x.height, x.pixel_size, x.unit);
  }
};

/// Plain-text mixture description: a `components N` line followed by N
/// `component <weight> <std_dev> <mean-file>` lines; mean files are LACT1
/// images resolved relative to the description file.
GmmPrior read_gmm_prior(const std::string& path);
void write_gmm_prior(const GmmPrior& prior, const std::string& path,
                     const std::string& mean_file_prefix);

}  // namespace lact
