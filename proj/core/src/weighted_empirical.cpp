#include "lvd/weighted_empirical.hpp"

#include <algorithm>
#include <cmath>

#include "lvd/errors.hpp"

namespace lvd {

namespace {

// Tolerance on the weight-sum invariant, and slack in the cumulative-weight
// comparison. The slack absorbs accumulation error in long partial sums
// (e.g. nine atoms of weight 1/10 sum to just below 0.9 in binary).
constexpr double kWeightTolerance = 1e-9;
constexpr double kCumulativeSlack = 1e-9;

}  // namespace

WeightedEmpirical WeightedEmpirical::from_atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) return WeightedEmpirical(std::move(atoms));

  double sum = 0.0;
  for (const Atom& a : atoms) {
    if (std::isnan(a.value) || a.value == -kInfinity) {
      throw DataError("weighted empirical: atom value must be a real number or +inf");
    }
    if (!std::isfinite(a.weight) || a.weight < 0.0) {
      throw DataError("weighted empirical: atom weight must be finite and non-negative");
    }
    sum += a.weight;
  }
  if (std::abs(sum - 1.0) > kWeightTolerance) {
    throw DataError("unnormalized weights");
  }
  for (Atom& a : atoms) a.weight /= sum;
  return WeightedEmpirical(std::move(atoms));
}

WeightedEmpirical uniform_empirical(std::span<const double> values, bool include_infinity) {
  if (values.empty() && !include_infinity) {
    throw DataError("uniform empirical: no values and no infinity atom");
  }
  const std::size_t m = values.size() + (include_infinity ? 1 : 0);
  const double w = 1.0 / static_cast<double>(m);
  std::vector<WeightedEmpirical::Atom> atoms;
  atoms.reserve(m);
  for (double v : values) atoms.push_back({v, w});
  if (include_infinity) atoms.push_back({kInfinity, w});
  return WeightedEmpirical::from_atoms(std::move(atoms));
}

double empirical_quantile(double alpha, const WeightedEmpirical& dist) {
  if (dist.empty()) throw DataError("empty distribution");
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw DataError("empirical quantile: alpha must lie in (0, 1]");
  }

  std::vector<WeightedEmpirical::Atom> sorted(dist.atoms().begin(), dist.atoms().end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.value < b.value; });

  const double threshold = alpha - kCumulativeSlack;
  double cumulative = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double value = sorted[i].value;
    // Merge the weight of every atom tied at this value before comparing.
    do {
      cumulative += sorted[i].weight;
      ++i;
    } while (i < sorted.size() && sorted[i].value == value);
    if (cumulative >= threshold) return value;
  }
  return sorted.back().value;
}

}  // namespace lvd
