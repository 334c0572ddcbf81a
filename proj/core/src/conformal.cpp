#include "lvd/conformal.hpp"

#include <cmath>
#include <vector>

#include "lvd/errors.hpp"

namespace lvd {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw DataError("alpha must lie in (0, 1)");
}

// Atoms in calibration order with the +inf atom last; weights per the
// localized construction. `values` are the (possibly MAD-normalized)
// residuals, `kernels` the per-point kernel values against the test point.
WeightedEmpirical localized_distribution(std::span<const double> values,
                                         std::span<const double> kernels) {
  double denom = 1.0;  // self kernel K(x_test, x_test)
  for (double k : kernels) denom += k;

  std::vector<WeightedEmpirical::Atom> atoms;
  atoms.reserve(values.size() + 1);
  for (std::size_t i = 0; i < values.size(); ++i) atoms.push_back({values[i], kernels[i] / denom});
  atoms.push_back({kInfinity, 1.0 / denom});
  return WeightedEmpirical::from_atoms(std::move(atoms));
}

}  // namespace

CalibrationSet collect_residuals(const Vector& y_true, const Vector& y_pred,
                                 const std::optional<Vector>& mad_pred) {
  if (y_true.size() != y_pred.size()) throw DataError("residuals: y_true and y_pred misaligned");
  if (!y_true.allFinite() || !y_pred.allFinite()) throw DataError("residuals: non-finite input");

  CalibrationSet cal;
  cal.signed_residuals = y_true - y_pred;
  cal.residuals = cal.signed_residuals.cwiseAbs();
  if (mad_pred) {
    if (mad_pred->size() != y_true.size()) throw DataError("residuals: MAD scales misaligned");
    for (Eigen::Index i = 0; i < mad_pred->size(); ++i) {
      if (!((*mad_pred)[i] > 0.0) || !std::isfinite((*mad_pred)[i])) {
        throw DataError("non-positive MAD scale");
      }
    }
    cal.mad_scales = *mad_pred;
  }
  cal.embeddings.resize(0, cal.residuals.size());
  return cal;
}

Interval split_interval(double center, const CalibrationSet& cal, double alpha) {
  check_alpha(alpha);
  const std::span<const double> residuals(cal.residuals.data(),
                                          static_cast<std::size_t>(cal.residuals.size()));
  const double q = empirical_quantile(1.0 - alpha, uniform_empirical(residuals, true));
  return {center, q};
}

WeightedEmpirical lvd_weights(const MetricModel& model, const Vector& x_test,
                              const CalibrationSet& cal) {
  if (cal.embeddings.rows() != model.A.cols() || x_test.size() != model.A.cols()) {
    throw DataError("lvd weights: embedding length does not match metric dimension");
  }
  const Matrix projected = model.A * cal.embeddings;
  const Vector proj_test = model.A * x_test;
  std::vector<double> kernels(static_cast<std::size_t>(cal.size()));
  for (int i = 0; i < cal.size(); ++i) {
    kernels[i] = std::exp(-(projected.col(i) - proj_test).squaredNorm());
  }
  const std::span<const double> residuals(cal.residuals.data(), kernels.size());
  return localized_distribution(residuals, kernels);
}

Interval lvd_interval(double center, const MetricModel& model, const Vector& x_test,
                      const CalibrationSet& cal, double alpha) {
  check_alpha(alpha);
  return {center, empirical_quantile(1.0 - alpha, lvd_weights(model, x_test, cal))};
}

Interval mad_interval(double center, const MetricModel& model, const Vector& x_test,
                      const CalibrationSet& cal, double alpha, double sigma_test) {
  check_alpha(alpha);
  if (!cal.mad_scales) throw DataError("MAD scales required");
  if (!(sigma_test > 0.0)) throw DataError("mad interval: sigma_test must be positive");

  const Matrix projected = model.A * cal.embeddings;
  const Vector proj_test = model.A * x_test;
  std::vector<double> kernels(static_cast<std::size_t>(cal.size()));
  std::vector<double> scaled(static_cast<std::size_t>(cal.size()));
  for (int i = 0; i < cal.size(); ++i) {
    kernels[i] = std::exp(-(projected.col(i) - proj_test).squaredNorm());
    scaled[i] = cal.residuals[i] / (*cal.mad_scales)[i];
  }
  const double q = empirical_quantile(1.0 - alpha, localized_distribution(scaled, kernels));
  return {center, sigma_test * q};
}

double predict_center(PredictorMode mode, const KernelRegressor* regressor, const Vector& x_norm,
                      std::optional<double> base_pred) {
  if (mode == PredictorMode::kBase) {
    if (!base_pred) throw DataError("base prediction required");
    return *base_pred;
  }
  if (!regressor) throw DataError("kernel-regression predictor requires training data");
  return regressor->predict(x_norm);
}

IntervalBuilder::IntervalBuilder(const MetricModel& model, const CalibrationSet& cal)
    : model_(model), cal_(cal), projected_(model.A * cal.embeddings) {
  if (cal.embeddings.rows() != model.A.cols()) {
    throw DataError("interval builder: embedding length does not match metric dimension");
  }
}

Interval IntervalBuilder::split(double center, double alpha) const {
  return split_interval(center, cal_, alpha);
}

WeightedEmpirical IntervalBuilder::localized_weights(const Vector& x_norm,
                                                     bool mad_normalized) const {
  const Vector proj_test = model_.A * x_norm;
  std::vector<double> kernels(static_cast<std::size_t>(cal_.size()));
  for (int i = 0; i < cal_.size(); ++i) {
    kernels[i] = std::exp(-(projected_.col(i) - proj_test).squaredNorm());
  }
  if (!mad_normalized) {
    const std::span<const double> residuals(cal_.residuals.data(), kernels.size());
    return localized_distribution(residuals, kernels);
  }
  std::vector<double> scaled(kernels.size());
  for (int i = 0; i < cal_.size(); ++i) scaled[i] = cal_.residuals[i] / (*cal_.mad_scales)[i];
  return localized_distribution(scaled, kernels);
}

std::vector<Interval> IntervalBuilder::lvd(double center, const Vector& x_norm,
                                           std::span<const double> alphas) const {
  const WeightedEmpirical dist = localized_weights(x_norm, false);
  std::vector<Interval> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    check_alpha(alpha);
    out.push_back({center, empirical_quantile(1.0 - alpha, dist)});
  }
  return out;
}

std::vector<Interval> IntervalBuilder::mad(double center, const Vector& x_norm,
                                           std::span<const double> alphas,
                                           double sigma_test) const {
  if (!cal_.mad_scales) throw DataError("MAD scales required");
  if (!(sigma_test > 0.0)) throw DataError("mad interval: sigma_test must be positive");
  const WeightedEmpirical dist = localized_weights(x_norm, true);
  std::vector<Interval> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    check_alpha(alpha);
    out.push_back({center, sigma_test * empirical_quantile(1.0 - alpha, dist)});
  }
  return out;
}

}  // namespace lvd
