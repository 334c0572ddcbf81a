#include "lvd/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lvd/errors.hpp"

namespace lvd {

void TrainConfig::validate() const {
  if (rank <= 0) throw DataError("train config: rank must be positive");
  if (!(learning_rate > 0.0)) throw DataError("train config: learning rate must be positive");
  if (batch_size <= 0 || max_batches <= 0 || patience <= 0 || neighbor_cap <= 0) {
    throw DataError("train config: counts must be positive");
  }
  if (neighbor_sample && *neighbor_sample <= 0) {
    throw DataError("train config: neighbor sample must be positive");
  }
}

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEpsilon = 1e-8;

LossGrad loss_and_gradient_projected(const Matrix& A, const Matrix& projected,
                                     std::span<const int> batch, const Matrix& X, const Vector& y,
                                     bool smooth, const std::vector<std::vector<int>>& neighbors) {
  const Eigen::Index n = y.size();
  const double batch_size = static_cast<double>(batch.size());
  const double y_sum = y.sum();

  double loss = 0.0;
  Matrix grad = Matrix::Zero(A.rows(), A.cols());
  std::vector<double> kernels;

  for (std::size_t b = 0; b < batch.size(); ++b) {
    const int i = batch[b];
    const auto& nbrs = neighbors[b];
    if (!smooth && nbrs.empty()) throw DataError("no neighbors");

    kernels.resize(nbrs.size());
    double weighted_y = 0.0;
    double total = 0.0;
    for (std::size_t q = 0; q < nbrs.size(); ++q) {
      const int j = nbrs[q];
      kernels[q] = std::exp(-(projected.col(j) - projected.col(i)).squaredNorm());
      weighted_y += y[j] * kernels[q];
      total += kernels[q];
    }

    double denom, pred;
    if (smooth) {
      const double loo_mean = (y_sum - y[i]) / static_cast<double>(n - 1);
      denom = 1.0 + total;
      pred = (loo_mean + weighted_y) / denom;
    } else {
      denom = total;
      pred = weighted_y / denom;
    }

    const double err = pred - y[i];
    loss += err * err / batch_size;

    // d pred / d K_ij = (y_j - pred) / denom and
    // d K_ij / d A    = -2 K_ij A (x_i - x_j)(x_i - x_j)^T, so each pair
    // contributes c * (A dx)(dx)^T with c as below.
    const double scale = -4.0 * err / (denom * batch_size);
    for (std::size_t q = 0; q < nbrs.size(); ++q) {
      const int j = nbrs[q];
      const double c = scale * (y[j] - pred) * kernels[q];
      grad.noalias() += c * (projected.col(i) - projected.col(j)) * (X.col(i) - X.col(j)).transpose();
    }
  }

  if (!std::isfinite(loss) || !grad.allFinite()) throw NumericError("numerical overflow");
  return {loss, std::move(grad)};
}

std::vector<std::vector<int>> resolve_neighbors(const Matrix& projected, std::span<const int> batch,
                                                int cap, std::optional<int> sample,
                                                std::mt19937_64* rng) {
  std::vector<std::vector<int>> lists;
  lists.reserve(batch.size());
  for (int i : batch) {
    std::vector<int> nbrs = nearest_neighbors(projected, i, cap);
    if (sample && rng && *sample < static_cast<int>(nbrs.size())) {
      std::vector<int> picked;
      picked.reserve(*sample);
      std::sample(nbrs.begin(), nbrs.end(), std::back_inserter(picked), *sample, *rng);
      nbrs = std::move(picked);
    }
    lists.push_back(std::move(nbrs));
  }
  return lists;
}

}  // namespace

LossGrad loss_and_gradient(const MetricModel& model, std::span<const int> batch, const Matrix& X,
                           const Vector& y, bool smooth,
                           const std::vector<std::vector<int>>& neighbors) {
  if (batch.empty()) throw DataError("loss: empty batch");
  if (neighbors.size() != batch.size()) throw DataError("loss: neighbor lists misaligned");
  const Matrix projected = model.A * X;
  return loss_and_gradient_projected(model.A, projected, batch, X, y, smooth, neighbors);
}

LossGrad loss_and_gradient(const MetricModel& model, std::span<const int> batch, const Matrix& X,
                           const Vector& y, const TrainConfig& config) {
  if (batch.empty()) throw DataError("loss: empty batch");
  const Matrix projected = model.A * X;
  const auto neighbors = resolve_neighbors(projected, batch, config.neighbor_cap, std::nullopt, nullptr);
  return loss_and_gradient_projected(model.A, projected, batch, X, y, config.smooth, neighbors);
}

double full_loo_loss(const MetricModel& model, const Matrix& X, const Vector& y,
                     const TrainConfig& config) {
  std::vector<int> all(static_cast<std::size_t>(y.size()));
  std::iota(all.begin(), all.end(), 0);
  return loss_and_gradient(model, all, X, y, config).loss;
}

TrainResult train_metric(const Matrix& X_raw, const Vector& y, const TrainConfig& config) {
  config.validate();
  const Eigen::Index n = X_raw.cols();
  if (n < 2) throw DataError("train metric: need at least 2 points");
  if (y.size() != n) throw DataError("train metric: embeddings and targets misaligned");
  if (!y.allFinite()) throw DataError("train metric: non-finite target");

  NormalizationStats norm = fit_normalization(X_raw);
  if (norm.kept_dim() == 0) {
    throw DataError("train metric: every embedding dimension is dead (std < 1e-3)");
  }
  if (config.rank > norm.kept_dim()) {
    throw DataError("train metric: rank k exceeds retained input dimension");
  }
  const Matrix X = normalize_all(X_raw, norm);
  const int h = norm.kept_dim();
  const int k = config.rank;

  std::mt19937_64 rng(config.seed);
  const double bound = 1.0 / std::sqrt(static_cast<double>(h));
  std::uniform_real_distribution<double> init(-bound, bound);
  Matrix A(k, h);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < h; ++c) A(r, c) = init(rng);
  }
  const Matrix initial_A = A;

  std::vector<int> population(static_cast<std::size_t>(n));
  std::iota(population.begin(), population.end(), 0);
  const int batch_size = std::min<int>(config.batch_size, static_cast<int>(n));

  Matrix adam_m = Matrix::Zero(k, h);
  Matrix adam_v = Matrix::Zero(k, h);
  double best_loss = kInfinity;
  Matrix best_A = A;
  int batches_run = 0;
  int stale = 0;

  for (int step = 0; step < config.max_batches; ++step) {
    std::vector<int> batch;
    batch.reserve(batch_size);
    std::sample(population.begin(), population.end(), std::back_inserter(batch), batch_size, rng);

    const Matrix projected = A * X;
    const auto neighbors =
        resolve_neighbors(projected, batch, config.neighbor_cap, config.neighbor_sample, &rng);
    const LossGrad lg =
        loss_and_gradient_projected(A, projected, batch, X, y, config.smooth, neighbors);
    ++batches_run;

    if (lg.loss < best_loss) {
      best_loss = lg.loss;
      best_A = A;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }

    const int t = step + 1;
    adam_m = kAdamBeta1 * adam_m + (1.0 - kAdamBeta1) * lg.grad;
    adam_v = kAdamBeta2 * adam_v + (1.0 - kAdamBeta2) * lg.grad.cwiseProduct(lg.grad);
    const double m_corr = 1.0 - std::pow(kAdamBeta1, t);
    const double v_corr = 1.0 - std::pow(kAdamBeta2, t);
    A.array() -= config.learning_rate * (adam_m.array() / m_corr) /
                 ((adam_v.array() / v_corr).sqrt() + kAdamEpsilon);
  }

  // Minibatch losses are noisy; fall back to the initial A if the best
  // snapshot does not actually help on the full data.
  MetricModel candidate{best_A, norm, k};
  double candidate_loss = full_loo_loss(candidate, X, y, config);
  if (best_A != initial_A) {
    const MetricModel initial{initial_A, norm, k};
    const double initial_loss = full_loo_loss(initial, X, y, config);
    if (initial_loss < candidate_loss) {
      candidate = initial;
      candidate_loss = initial_loss;
    }
  }
  return {std::move(candidate), {candidate_loss, batches_run}};
}

}  // namespace lvd
