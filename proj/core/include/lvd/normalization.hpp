#pragma once

#include <vector>

#include "lvd/types.hpp"

namespace lvd {

/// Per-dimension standardization statistics fitted on raw embeddings.
/// Dimensions whose standard deviation falls below `kDeadDimThreshold`
/// (typically dead ReLU units) are dropped; `kept_dims` lists the surviving
/// input dimensions in ascending order.
struct NormalizationStats {
  Vector means;                // length h (raw dimension)
  Vector stds;                 // length h
  std::vector<int> kept_dims;  // sorted subset of {0..h-1}

  int raw_dim() const { return static_cast<int>(means.size()); }
  int kept_dim() const { return static_cast<int>(kept_dims.size()); }
};

inline constexpr double kDeadDimThreshold = 1e-3;

/// Fits means and sample standard deviations (divisor n-1) on the columns of
/// `embeddings` (one point per column, h x n). Requires n >= 2 and all
/// entries finite.
NormalizationStats fit_normalization(const Matrix& embeddings);

/// Maps a raw h-vector to the standardized h'-vector over kept dimensions.
Vector normalize(const Vector& e, const NormalizationStats& norm);

/// Column-wise batch version: h x n -> h' x n.
Matrix normalize_all(const Matrix& embeddings, const NormalizationStats& norm);

}  // namespace lvd
