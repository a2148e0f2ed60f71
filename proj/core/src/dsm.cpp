#include "lact/dsm.hpp"

#include "lact/rng.hpp"

namespace lact {

double dsm_loss(const ScoreFunction& score, const std::vector<Image>& clean,
                const NoiseSchedule& sched, int n_draws, std::uint64_t seed) {
  if (clean.empty()) throw InvalidConfig("diffusion", "dsm_loss needs clean images");
  if (n_draws < 1) throw InvalidConfig("diffusion", "dsm_loss needs n_draws >= 1");
  for (const auto& img : clean)
    if (!img.same_shape(clean.front()))
      throw ShapeMismatch("diffusion", "clean images must share one shape");

  Rng rng(seed);
  const std::size_t d = clean.front().size();
  Image x(clean.front().width, clean.front().height);
  std::vector<double> z(d);

  double acc = 0.0;
  for (int n = 0; n < n_draws; ++n) {
    const double t = rng.uniform();
    const std::size_t pick = static_cast<std::size_t>(rng.next_u64() % clean.size());
    const Image& x0 = clean[pick];
    const double sig = sched.sigma_at(t);
    for (std::size_t i = 0; i < d; ++i) {
      z[i] = rng.normal();
      x.data[i] = x0.data[i] + sig * z[i];
    }
    const Image s = score.evaluate(x, t);
    if (!s.same_shape(x))
      throw ShapeMismatch("diffusion", "score output shape differs from the input");
    double r2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double r = s.data[i] + z[i] / sig;
      r2 += r * r;
    }
    acc += sig * sig * r2;
  }
  return acc / n_draws;
}

}  // namespace lact
