#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lvd/metric.hpp"
#include "lvd/types.hpp"

namespace lvd {

/// Knobs for metric training. Defaults follow the reference protocol:
/// Adam at 1e-2, batches of 100, up to 1000 batches with patience 50, and
/// kernel sums restricted to the 3000 nearest points.
struct TrainConfig {
  int rank = 10;               // k, rows of A
  double learning_rate = 1e-2;
  int batch_size = 100;        // B1
  int max_batches = 1000;
  int patience = 50;
  int neighbor_cap = 3000;     // M
  std::optional<int> neighbor_sample;  // B2; unset = use all top-M
  bool smooth = true;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LossGrad {
  double loss;
  Matrix grad;  // dLoss/dA, k x h'
};

struct TrainSummary {
  double final_loss = 0.0;  // full-data LOO loss of the returned model
  int batches_run = 0;
};

struct TrainResult {
  MetricModel model;
  TrainSummary summary;
};

/// Mean squared LOO prediction error over `batch` and its exact analytic
/// gradient with respect to A. `neighbors[b]` lists the prediction support
/// for batch[b] (excluding the point itself); the sets are treated as fixed
/// for differentiation. Throws NumericError on non-finite loss or gradient.
LossGrad loss_and_gradient(const MetricModel& model, std::span<const int> batch, const Matrix& X,
                           const Vector& y, bool smooth,
                           const std::vector<std::vector<int>>& neighbors);

/// Convenience form resolving each batch point's neighbors as the top-M
/// nearest under the model's current A (M = config.neighbor_cap). B2
/// subsampling is the trainer's concern and is not applied here.
LossGrad loss_and_gradient(const MetricModel& model, std::span<const int> batch, const Matrix& X,
                           const Vector& y, const TrainConfig& config);

/// LOO loss over every training point, neighbor cap applied, no subsampling.
double full_loo_loss(const MetricModel& model, const Matrix& X, const Vector& y,
                     const TrainConfig& config);

/// Fits normalization on the raw embeddings (h x n, one point per column)
/// and trains A with Adam on minibatch LOO kernel-regression MSE. Neighbor
/// sets track the current A and are recomputed every batch. Deterministic
/// given config.seed; never returns a model whose full-data LOO loss exceeds
/// that of the freshly initialized one.
TrainResult train_metric(const Matrix& X_raw, const Vector& y, const TrainConfig& config);

}  // namespace lvd
