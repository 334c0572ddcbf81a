#include "lvd/synth.hpp"

#include <cmath>
#include <random>

#include "lvd/errors.hpp"

namespace lvd {

void SynthConfig::validate() const {
  if (n <= 0) throw DataError("synth: n must be positive");
  if (!(uniform_prob >= 0.0) || !(uniform_prob <= 1.0)) {
    throw DataError("synth: uniform_prob must lie in [0, 1]");
  }
  if (!(noise_sigma > 0.0) || !(halfnormal_sigma > 0.0)) {
    throw DataError("synth: sigmas must be positive");
  }
}

std::vector<SynthSample> generate(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> branch(0.0, 1.0);
  std::uniform_real_distribution<double> body(-1.0, 1.0);
  std::normal_distribution<double> tail(0.0, config.halfnormal_sigma);
  std::normal_distribution<double> noise(0.0, config.noise_sigma);

  std::vector<SynthSample> samples;
  samples.reserve(static_cast<std::size_t>(config.n));
  for (int i = 0; i < config.n; ++i) {
    const double x = branch(rng) < config.uniform_prob ? body(rng) : 1.0 + std::abs(tail(rng));
    samples.push_back({x, x * x * x + noise(rng)});
  }
  return samples;
}

}  // namespace lvd
