#pragma once

#include <cstdint>
#include <vector>

#include "lvd/types.hpp"

namespace lvd {

/// Cubic benchmark: y = x^3 + eps with eps ~ N(0, noise_sigma^2) and x drawn
/// from Unif[-1, 1] with probability uniform_prob, otherwise 1 + |z| with
/// z ~ N(0, halfnormal_sigma^2) (half-normal supported on [1, inf)).
struct SynthConfig {
  int n = 0;
  std::uint64_t seed = 0;
  double noise_sigma = 4.0;
  double uniform_prob = 0.9;
  double halfnormal_sigma = 1.0;

  void validate() const;
};

struct SynthSample {
  double x;
  double y;
};

/// Deterministic per seed within one build of the artifact.
std::vector<SynthSample> generate(const SynthConfig& config);

}  // namespace lvd
