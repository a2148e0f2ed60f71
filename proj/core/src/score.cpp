#include "lact/score.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lact/io.hpp"

namespace lact {

Image oracle_score(const Image& x, const Image& x_true, const NoiseSchedule& sched, double t) {
  if (!x.same_shape(x_true))
    throw ShapeMismatch("diffusion", "oracle score target shape differs from the input");
  const double s2 = sched.sigma_at(t) * sched.sigma_at(t);
  Image out(x.width, x.height, x.pixel_size, x.unit);
  for (std::size_t i = 0; i < x.size(); ++i)
    out.data[i] = (x_true.data[i] - x.data[i]) / s2;
  return out;
}

void GmmPrior::validate() const {
  if (components.empty()) throw InvalidPrior("mixture has no components");
  double sum = 0.0;
  for (const auto& c : components) {
    if (!(c.weight > 0.0)) throw InvalidPrior("component weights must be positive");
    if (!(c.std_dev > 0.0)) throw InvalidPrior("component std_dev must be positive");
    if (c.mean.width < 1 || c.mean.height < 1) throw InvalidPrior("component mean is empty");
    if (!c.mean.same_shape(components.front().mean))
      throw InvalidPrior("component means must share one shape");
    sum += c.weight;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidPrior("component weights must sum to 1");
}

Image gmm_score(const Image& x, const GmmPrior& prior, const NoiseSchedule& sched, double t) {
  prior.validate();
  if (!x.same_shape(prior.components.front().mean))
    throw ShapeMismatch("diffusion", "mixture mean shape differs from the input");

  const double sig2 = sched.sigma_at(t) * sched.sigma_at(t);
  const double d = static_cast<double>(x.size());
  const std::size_t K = prior.components.size();

  // log responsibilities: log w_k - d/2 log(2 pi v_k) - ||x - mu_k||^2 / (2 v_k)
  std::vector<double> logits(K);
  std::vector<double> inv_var(K);
  for (std::size_t k = 0; k < K; ++k) {
    const auto& c = prior.components[k];
    const double v = c.std_dev * c.std_dev + sig2;
    inv_var[k] = 1.0 / v;
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = x.data[i] - c.mean.data[i];
      d2 += r * r;
    }
    logits[k] = std::log(c.weight) - 0.5 * d * std::log(2.0 * std::numbers::pi * v) -
                0.5 * d2 * inv_var[k];
  }
  double m = logits[0];
  for (double l : logits) m = std::max(m, l);
  double z = 0.0;
  std::vector<double> resp(K);
  for (std::size_t k = 0; k < K; ++k) {
    resp[k] = std::exp(logits[k] - m);
    z += resp[k];
  }

  Image out(x.width, x.height, x.pixel_size, x.unit);
  for (std::size_t k = 0; k < K; ++k) {
    const double gk = resp[k] / z;
    if (gk == 0.0) continue;
    const auto& mean = prior.components[k].mean;
    const double a = gk * inv_var[k];
    for (std::size_t i = 0; i < x.size(); ++i)
      out.data[i] += a * (mean.data[i] - x.data[i]);
  }
  return out;
}

GmmPrior read_gmm_prior(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path);
  const auto dir = std::filesystem::path(path).parent_path();

  GmmPrior prior;
  std::string line;
  long declared = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "components") {
      if (!(ls >> declared) || declared < 1)
        throw InvalidPrior("bad components count in " + path);
    } else if (tag == "component") {
      GmmComponent c;
      std::string mean_file;
      if (!(ls >> c.weight >> c.std_dev >> mean_file))
        throw InvalidPrior("malformed component line in " + path);
      c.mean = read_lact_image((dir / mean_file).string());
      prior.components.push_back(std::move(c));
    } else {
      throw InvalidPrior("unknown directive '" + tag + "' in " + path);
    }
  }
  if (declared >= 0 && declared != static_cast<long>(prior.components.size()))
    throw InvalidPrior("component count mismatch in " + path);
  prior.validate();
  return prior;
}

void write_gmm_prior(const GmmPrior& prior, const std::string& path,
                     const std::string& mean_file_prefix) {
  prior.validate();
  const auto dir = std::filesystem::path(path).parent_path();
  std::ostringstream body;
  body << "components " << prior.components.size() << "\n";
  for (std::size_t k = 0; k < prior.components.size(); ++k) {
    const std::string mean_file = mean_file_prefix + std::to_string(k) + ".lact";
    write_lact((dir / mean_file).string(), prior.components[k].mean);
    body << "component " << prior.components[k].weight << " "
         << prior.components[k].std_dev << " " << mean_file << "\n";
  }
  write_text_atomic(path, body.str());
}

}  // namespace lact
