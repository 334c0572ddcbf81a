#pragma once

#include <optional>
#include <span>

#include "lvd/conformal.hpp"
#include "lvd/metric.hpp"
#include "lvd/types.hpp"

namespace lvd {

/// Validity and discrimination summary for one batch of intervals.
/// tcr and auroc are absent when undefined (fewer than 10 test points, or a
/// single-class residual labeling); mean_finite_width is absent when every
/// interval is infinite.
struct EvalReport {
  double mcr = 0.0;
  std::optional<double> tcr;
  std::optional<double> auroc;
  double mad = 0.0;
  std::optional<double> mean_finite_width;
  int finite_count = 0;
  int n_test = 0;
};

/// Fraction of test points whose interval contains the truth. Infinite
/// intervals always cover; |y - center| == half_width counts as covered.
double marginal_coverage(std::span<const Interval> intervals, std::span<const double> y_true);

/// Coverage restricted to the union of the top and bottom response deciles,
/// deciles by rank (ceil(n/10) points per tail, ties broken by index).
/// Requires n >= 10.
double tail_coverage(std::span<const Interval> intervals, std::span<const double> y_true);

/// AUROC of the width (infinities rank above every finite width) as a
/// predictor of the residual being strictly above the median residual.
/// Mann-Whitney rank form with midrank tie handling.
double discrimination_auroc(std::span<const double> widths, std::span<const double> abs_residuals);

double mean_abs_deviation(std::span<const double> centers, std::span<const double> y_true);

struct WidthStats {
  int finite_count = 0;
  std::optional<double> mean_finite_width;  // mean FULL width over finite CIs
};
WidthStats width_stats(std::span<const Interval> intervals);

/// Kernel-weighted plug-in estimate of coverage in the neighborhood of
/// center_x: sum_i K(center_x, x_i) covered_i / sum_i K(center_x, x_i).
double local_coverage_estimate(const MetricModel& model, const Vector& center_x,
                               std::span<const Interval> intervals,
                               std::span<const double> y_true, const Matrix& X_test);

/// Assembles the full report, leaving tcr/auroc unset where undefined.
EvalReport build_report(std::span<const Interval> intervals, std::span<const double> y_true);

}  // namespace lvd
