#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "lact/dsm.hpp"
#include "lact/errors.hpp"
#include "lact/rng.hpp"
#include "lact/schedule.hpp"
#include "lact/score.hpp"

using namespace lact;

namespace {

// Wraps another score and multiplies its output by a constant.
class ScaledScore final : public ScoreFunction {
public:
  ScaledScore(const ScoreFunction& inner, double factor) : inner_(inner), factor_(factor) {}
  Image evaluate(const Image& x, double t) const override {
    Image s = inner_.evaluate(x, t);
    for (auto& v : s.data) v *= factor_;
    return s;
  }

private:
  const ScoreFunction& inner_;
  double factor_;
};

class WrongShapeScore final : public ScoreFunction {
public:
  Image evaluate(const Image& x, double /*t*/) const override {
    return Image(x.width + 1, x.height);
  }
};

Image smooth_blob(int w, int h) {
  Image img(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      img.at(r, c) = 0.5 + 0.3 * std::sin(0.7 * r) * std::cos(0.9 * c);
  return img;
}

}  // namespace

TEST_CASE("dsm loss of the exact conditional score is numerically zero") {
  const NoiseSchedule sched(0.01, 1.0, 100);
  const Image x_true = smooth_blob(5, 4);
  const OracleScore oracle(x_true, sched);
  const double loss = dsm_loss(oracle, {x_true}, sched, 200, 7);
  CHECK(loss >= 0.0);
  CHECK(loss < 1e-20);
}

TEST_CASE("dsm loss of the zero score estimates the pixel count") {
  const NoiseSchedule sched(0.01, 1.0, 100);
  const Image x_true = smooth_blob(5, 4);
  const double d = static_cast<double>(x_true.size());
  const int n_draws = 10000;
  const double loss = dsm_loss(ZeroScore(), {x_true}, sched, n_draws, 123);
  // Each draw is ||z||^2 ~ chi-squared with d degrees of freedom (variance 2d).
  const double se = std::sqrt(2.0 * d / n_draws);
  CHECK(std::abs(loss - d) <= 3.0 * se);
}

TEST_CASE("oracle score beats scaled and zeroed variants under paired draws") {
  const NoiseSchedule sched(0.01, 1.0, 100);
  const Image x_true = smooth_blob(6, 6);
  const OracleScore oracle(x_true, sched);
  const std::vector<Image> clean = {x_true};
  const std::uint64_t seed = 99;
  const int n_draws = 10000;

  const double base = dsm_loss(oracle, clean, sched, n_draws, seed);
  for (const double factor : {0.5, 2.0, 0.0}) {
    const ScaledScore perturbed(oracle, factor);
    const double worse = dsm_loss(perturbed, clean, sched, n_draws, seed);
    CAPTURE(factor);
    CHECK(base < worse);
  }
}

TEST_CASE("dsm loss is deterministic in the seed") {
  const NoiseSchedule sched(0.01, 1.0, 50);
  const Image x_true = smooth_blob(4, 4);
  const double a = dsm_loss(ZeroScore(), {x_true}, sched, 500, 42);
  const double b = dsm_loss(ZeroScore(), {x_true}, sched, 500, 42);
  const double c = dsm_loss(ZeroScore(), {x_true}, sched, 500, 43);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("dsm loss averages over a multi-image clean set") {
  const NoiseSchedule sched(0.01, 1.0, 50);
  Image a = smooth_blob(4, 4);
  Image b = smooth_blob(4, 4);
  for (auto& v : b.data) v = 1.0 - v;
  // The point-mass oracle for image `a` is misspecified half the time, so the
  // loss must sit strictly between the single-image optima.
  const OracleScore oracle_a(a, sched);
  const double mixed = dsm_loss(oracle_a, {a, b}, sched, 4000, 5);
  const double pure = dsm_loss(oracle_a, {a}, sched, 4000, 5);
  CHECK(std::isfinite(mixed));
  CHECK(mixed > pure);
}

TEST_CASE("dsm loss validates its inputs") {
  const NoiseSchedule sched(0.01, 1.0, 50);
  const Image x_true = smooth_blob(4, 4);
  CHECK_THROWS_AS(dsm_loss(ZeroScore(), {}, sched, 10, 0), InvalidConfig);
  CHECK_THROWS_AS(dsm_loss(ZeroScore(), {x_true}, sched, 0, 0), InvalidConfig);
  const std::vector<Image> mismatched = {Image(4, 4), Image(5, 4)};
  CHECK_THROWS_AS(dsm_loss(ZeroScore(), mismatched, sched, 10, 0), ShapeMismatch);
  CHECK_THROWS_AS(dsm_loss(WrongShapeScore(), {x_true}, sched, 10, 0), ShapeMismatch);
}
