#pragma once

#include <cmath>
#include <optional>
#include <span>

#include "lvd/metric.hpp"
#include "lvd/types.hpp"
#include "lvd/weighted_empirical.hpp"

namespace lvd {

/// Hold-out residuals used for conformal calibration. The embeddings are
/// already normalized (h' x m). The estimator that produced the predictions
/// must not have been trained on these points; that independence is the
/// caller's contract and cannot be checked here.
struct CalibrationSet {
  Matrix embeddings;        // h' x m; may be 0 x m until attached
  Vector residuals;         // |y - y_hat|, non-negative
  Vector signed_residuals;  // y - y_hat, kept for diagnostics
  std::optional<Vector> mad_scales;  // predicted error scales, strictly positive

  int size() const { return static_cast<int>(residuals.size()); }
};

/// Symmetric confidence interval [center - half_width, center + half_width].
/// half_width = +inf encodes the uninformative interval.
struct Interval {
  double center = 0.0;
  double half_width = 0.0;

  bool contains(double y) const { return std::abs(y - center) <= half_width; }
  bool finite() const { return half_width < kInfinity; }
  double lower() const { return center - half_width; }
  double upper() const { return center + half_width; }
  double width() const { return 2.0 * half_width; }
};

/// Builds a calibration set (without embeddings) from aligned truth and
/// prediction vectors. mad_pred entries, when given, must be positive.
CalibrationSet collect_residuals(const Vector& y_true, const Vector& y_pred,
                                 const std::optional<Vector>& mad_pred = std::nullopt);

/// Split conformal: half-width is the (1-alpha) quantile of the residuals
/// plus one +inf atom, all weighted 1/(m+1). An empty calibration set gives
/// an infinite interval.
Interval split_interval(double center, const CalibrationSet& cal, double alpha);

/// Kernel-localized residual distribution for a test embedding:
/// atoms {(R_i, w_i)} plus {(+inf, w_test)} with
///   w_j = K(x_j, x_test) / (1 + sum_i K(x_i, x_test)).
WeightedEmpirical lvd_weights(const MetricModel& model, const Vector& x_test,
                              const CalibrationSet& cal);

/// Locally valid interval: the (1-alpha) quantile of lvd_weights.
Interval lvd_interval(double center, const MetricModel& model, const Vector& x_test,
                      const CalibrationSet& cal, double alpha);

/// MAD-normalized variant: quantile over R_i / mad_scales[i] with the same
/// kernel weights, rescaled by the test point's predicted error scale.
Interval mad_interval(double center, const MetricModel& model, const Vector& x_test,
                      const CalibrationSet& cal, double alpha, double sigma_test);

enum class PredictorMode { kBase, kKernelRegression };

/// Center for a test point: either the supplied base prediction or a
/// Nadaraya-Watson prediction from the training set (the query never
/// contributes to itself; the regressor's training data excludes it).
double predict_center(PredictorMode mode, const KernelRegressor* regressor, const Vector& x_norm,
                      std::optional<double> base_pred);

/// Interval construction for many test points against one calibration set.
/// Caches the A-projection of every calibration embedding once, and reuses
/// one weight vector across all alphas for a given test point.
class IntervalBuilder {
 public:
  IntervalBuilder(const MetricModel& model, const CalibrationSet& cal);

  Interval split(double center, double alpha) const;
  std::vector<Interval> lvd(double center, const Vector& x_norm,
                            std::span<const double> alphas) const;
  std::vector<Interval> mad(double center, const Vector& x_norm, std::span<const double> alphas,
                            double sigma_test) const;

 private:
  WeightedEmpirical localized_weights(const Vector& x_norm, bool mad_normalized) const;

  const MetricModel& model_;
  const CalibrationSet& cal_;
  Matrix projected_;  // k x m
};

}  // namespace lvd
