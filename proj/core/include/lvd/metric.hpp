#pragma once

#include <span>
#include <vector>

#include "lvd/normalization.hpp"
#include "lvd/types.hpp"

namespace lvd {

/// Low-rank Mahalanobis transform defining the Gaussian similarity kernel
/// K(u, v) = exp(-||A(u - v)||^2) over standardized embeddings. A is k x h'
/// with k <= h'.
struct MetricModel {
  Matrix A;
  NormalizationStats norm;
  int k = 0;

  /// Throws DataError when the shape or value invariants are violated.
  void validate() const;
};

/// K(u, v) = exp(-||A(u - v)||^2), in (0, 1], symmetric, 1 iff A(u-v) = 0.
/// u and v must already be normalized (length h').
double kernel_value(const MetricModel& model, const Vector& u, const Vector& v);

/// Leave-one-out Nadaraya-Watson prediction for point i over the given
/// neighbor indices (which must exclude i):
///   sum_j y_j K(x_i, x_j) / sum_j K(x_i, x_j).
/// X holds normalized points as columns (h' x n).
double loo_kr_predict(const MetricModel& model, int i, const Matrix& X, const Vector& y,
                      std::span<const int> neighbors);

/// Smoothness-regularized variant: the self kernel K(x_i, x_i) = 1 pulls the
/// prediction toward the leave-one-out mean of y over all n-1 other training
/// points (not just the neighbor subset):
///   (ybar_{-i} + sum_j y_j K_ij) / (1 + sum_j K_ij).
double loo_kr_predict_smooth(const MetricModel& model, int i, const Matrix& X, const Vector& y,
                             std::span<const int> neighbors);

/// Indices of the `cap` nearest points to i under ||A(x_i - x_j)||^2,
/// excluding i itself. `projected` is A * X (k x n).
std::vector<int> nearest_neighbors(const Matrix& projected, int i, int cap);

/// Nadaraya-Watson inference over a fixed training set with the projections
/// A*x_j cached once. Queries are fresh points, so the self-term of the
/// smooth variant uses the full training mean of y.
class KernelRegressor {
 public:
  KernelRegressor(const MetricModel& model, const Matrix& X_train_norm, Vector y_train,
                  int neighbor_cap, bool smooth);

  double predict(const Vector& x_norm) const;

  int train_size() const { return static_cast<int>(y_.size()); }

 private:
  const MetricModel& model_;
  Matrix projected_;  // k x n
  Vector y_;
  int cap_;
  bool smooth_;
  double y_mean_;
};

}  // namespace lvd
