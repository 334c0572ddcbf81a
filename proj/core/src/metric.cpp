#include "lvd/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lvd/errors.hpp"

namespace lvd {

void MetricModel::validate() const {
  if (k <= 0) throw DataError("metric model: rank k must be positive");
  if (A.rows() != k || A.cols() != norm.kept_dim()) {
    throw DataError("metric model: A must be k x h' with h' = |kept_dims|");
  }
  if (k > norm.kept_dim()) {
    throw DataError("metric model: rank k exceeds retained input dimension");
  }
  if (!A.allFinite()) throw DataError("metric model: non-finite entry in A");
  for (int d : norm.kept_dims) {
    if (d < 0 || d >= norm.raw_dim()) throw DataError("metric model: kept dimension out of range");
    if (!(norm.stds[d] > 0.0)) throw DataError("metric model: non-positive std on kept dimension");
  }
}

double kernel_value(const MetricModel& model, const Vector& u, const Vector& v) {
  if (u.size() != model.A.cols() || v.size() != model.A.cols()) {
    throw DataError("kernel value: embedding length does not match metric dimension");
  }
  return std::exp(-(model.A * (u - v)).squaredNorm());
}

namespace {

// Shared core of both predictors. Kernel values are computed against the
// cached projections so training and inference share one arithmetic path.
struct KernelSums {
  double weighted_y = 0.0;
  double total = 0.0;
};

KernelSums kernel_sums(const Matrix& projected, const Vector& proj_i, const Vector& y,
                       std::span<const int> neighbors) {
  KernelSums s;
  for (int j : neighbors) {
    const double k = std::exp(-(projected.col(j) - proj_i).squaredNorm());
    s.weighted_y += y[j] * k;
    s.total += k;
  }
  return s;
}

}  // namespace

double loo_kr_predict(const MetricModel& model, int i, const Matrix& X, const Vector& y,
                      std::span<const int> neighbors) {
  if (neighbors.empty()) throw DataError("no neighbors");
  const Matrix projected = model.A * X;
  const KernelSums s = kernel_sums(projected, projected.col(i), y, neighbors);
  const double pred = s.weighted_y / s.total;
  if (!std::isfinite(pred)) throw NumericError("kernel regression: all kernel weights underflowed");
  return pred;
}

double loo_kr_predict_smooth(const MetricModel& model, int i, const Matrix& X, const Vector& y,
                             std::span<const int> neighbors) {
  const Eigen::Index n = y.size();
  if (n < 2) throw DataError("leave-one-out prediction needs at least 2 points");
  const double loo_mean = (y.sum() - y[i]) / static_cast<double>(n - 1);
  const Matrix projected = model.A * X;
  const KernelSums s = kernel_sums(projected, projected.col(i), y, neighbors);
  return (loo_mean + s.weighted_y) / (1.0 + s.total);
}

std::vector<int> nearest_neighbors(const Matrix& projected, int i, int cap) {
  const int n = static_cast<int>(projected.cols());
  std::vector<int> others;
  others.reserve(n - 1);
  for (int j = 0; j < n; ++j) {
    if (j != i) others.push_back(j);
  }
  if (cap >= static_cast<int>(others.size())) return others;

  std::vector<double> dist(n);
  for (int j : others) dist[j] = (projected.col(j) - projected.col(i)).squaredNorm();
  std::nth_element(others.begin(), others.begin() + cap, others.end(),
                   [&](int a, int b) { return dist[a] < dist[b]; });
  others.resize(cap);
  std::sort(others.begin(), others.end());
  return others;
}

KernelRegressor::KernelRegressor(const MetricModel& model, const Matrix& X_train_norm,
                                 Vector y_train, int neighbor_cap, bool smooth)
    : model_(model),
      projected_(model.A * X_train_norm),
      y_(std::move(y_train)),
      cap_(neighbor_cap),
      smooth_(smooth) {
  if (X_train_norm.cols() != y_.size()) {
    throw DataError("kernel regressor: embeddings and targets misaligned");
  }
  if (y_.size() == 0) throw DataError("kernel regressor: empty training set");
  if (cap_ <= 0) throw DataError("kernel regressor: neighbor cap must be positive");
  y_mean_ = y_.mean();
}

double KernelRegressor::predict(const Vector& x_norm) const {
  if (x_norm.size() != model_.A.cols()) {
    throw DataError("kernel regressor: query length does not match metric dimension");
  }
  const Vector proj = model_.A * x_norm;
  const int n = train_size();

  KernelSums s;
  if (cap_ >= n) {
    for (int j = 0; j < n; ++j) {
      const double k = std::exp(-(projected_.col(j) - proj).squaredNorm());
      s.weighted_y += y_[j] * k;
      s.total += k;
    }
  } else {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> dist(n);
    for (int j = 0; j < n; ++j) dist[j] = (projected_.col(j) - proj).squaredNorm();
    std::nth_element(idx.begin(), idx.begin() + cap_, idx.end(),
                     [&](int a, int b) { return dist[a] < dist[b]; });
    idx.resize(cap_);
    std::sort(idx.begin(), idx.end());
    for (int j : idx) {
      const double k = std::exp(-dist[j]);
      s.weighted_y += y_[j] * k;
      s.total += k;
    }
  }

  if (smooth_) return (y_mean_ + s.weighted_y) / (1.0 + s.total);
  const double pred = s.weighted_y / s.total;
  if (!std::isfinite(pred)) throw NumericError("kernel regression: all kernel weights underflowed");
  return pred;
}

}  // namespace lvd
