#pragma once

#include <span>
#include <vector>

#include "lvd/types.hpp"

namespace lvd {

/// Finite distribution of (value, weight) atoms over the extended reals.
/// Values may be +inf (never -inf, never NaN); weights are non-negative and
/// sum to 1. The atom list is an unordered multiset: duplicates are fine and
/// order only matters for reproducibility of downstream arithmetic.
class WeightedEmpirical {
 public:
  struct Atom {
    double value;
    double weight;
  };

  WeightedEmpirical() = default;

  /// Validates atoms and renormalizes weights. Weight sums deviating from 1
  /// by more than 1e-9 are an error rather than silently rescaled.
  static WeightedEmpirical from_atoms(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

 private:
  explicit WeightedEmpirical(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  std::vector<Atom> atoms_;
};

/// Equal-weight distribution over `values`, optionally with one extra +inf
/// atom (each atom then weighs 1/(m+1)). Errors when both the value list is
/// empty and no infinity atom is requested.
WeightedEmpirical uniform_empirical(std::span<const double> values, bool include_infinity);

/// Q(alpha, F) = inf { v : F(v) >= alpha } for alpha in (0, 1].
/// Atoms with equal value are merged by summing weights during the scan.
/// Returns +inf when only the infinity atom reaches alpha.
double empirical_quantile(double alpha, const WeightedEmpirical& dist);

}  // namespace lvd
