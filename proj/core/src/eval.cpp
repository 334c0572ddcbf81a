#include "lvd/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lvd/errors.hpp"

namespace lvd {

namespace {

void check_aligned(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DataError(std::string(what) + ": misaligned inputs");
  if (a == 0) throw DataError(std::string(what) + ": empty input");
}

double median(std::vector<double> values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double marginal_coverage(std::span<const Interval> intervals, std::span<const double> y_true) {
  check_aligned(intervals.size(), y_true.size(), "marginal coverage");
  std::size_t covered = 0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].contains(y_true[i])) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(intervals.size());
}

double tail_coverage(std::span<const Interval> intervals, std::span<const double> y_true) {
  check_aligned(intervals.size(), y_true.size(), "tail coverage");
  const std::size_t n = y_true.size();
  if (n < 10) throw DataError("tails undefined");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y_true[a] < y_true[b]; });

  const std::size_t per_tail =
      static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(n)));
  std::size_t covered = 0, total = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r >= per_tail && r < n - per_tail) continue;
    ++total;
    if (intervals[order[r]].contains(y_true[order[r]])) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(total);
}

double discrimination_auroc(std::span<const double> widths, std::span<const double> abs_residuals) {
  check_aligned(widths.size(), abs_residuals.size(), "auroc");
  const std::size_t n = widths.size();
  if (n < 2) throw DataError("AUROC undefined");

  const double med = median({abs_residuals.begin(), abs_residuals.end()});
  std::vector<bool> positive(n);
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    positive[i] = abs_residuals[i] > med;  // ties at the median are negatives
    if (positive[i]) ++n_pos;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw DataError("AUROC undefined");

  // Midrank Mann-Whitney. +inf scores sort above all finite ones and tie
  // among themselves, which is exactly the intended ranking.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return widths[a] < widths[b]; });

  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && widths[order[j]] == widths[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (std::size_t r = i; r < j; ++r) {
      if (positive[order[r]]) rank_sum_pos += midrank;
    }
    i = j;
  }
  const double p = static_cast<double>(n_pos);
  return (rank_sum_pos - p * (p + 1.0) / 2.0) / (p * static_cast<double>(n_neg));
}

double mean_abs_deviation(std::span<const double> centers, std::span<const double> y_true) {
  check_aligned(centers.size(), y_true.size(), "mean absolute deviation");
  double sum = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) sum += std::abs(y_true[i] - centers[i]);
  return sum / static_cast<double>(centers.size());
}

WidthStats width_stats(std::span<const Interval> intervals) {
  if (intervals.empty()) throw DataError("width stats: empty input");
  WidthStats stats;
  double sum = 0.0;
  for (const Interval& ci : intervals) {
    if (ci.finite()) {
      ++stats.finite_count;
      sum += ci.width();
    }
  }
  if (stats.finite_count > 0) stats.mean_finite_width = sum / stats.finite_count;
  return stats;
}

double local_coverage_estimate(const MetricModel& model, const Vector& center_x,
                               std::span<const Interval> intervals,
                               std::span<const double> y_true, const Matrix& X_test) {
  check_aligned(intervals.size(), y_true.size(), "local coverage");
  if (static_cast<std::size_t>(X_test.cols()) != intervals.size()) {
    throw DataError("local coverage: misaligned inputs");
  }
  double num = 0.0, denom = 0.0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const double k = kernel_value(model, center_x, X_test.col(static_cast<Eigen::Index>(i)));
    denom += k;
    if (intervals[i].contains(y_true[i])) num += k;
  }
  if (denom == 0.0) throw DataError("local coverage: all kernel weights are zero");
  return num / denom;
}

EvalReport build_report(std::span<const Interval> intervals, std::span<const double> y_true) {
  EvalReport report;
  report.n_test = static_cast<int>(intervals.size());
  report.mcr = marginal_coverage(intervals, y_true);

  if (intervals.size() >= 10) report.tcr = tail_coverage(intervals, y_true);

  std::vector<double> centers(intervals.size()), widths(intervals.size()),
      residuals(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    centers[i] = intervals[i].center;
    widths[i] = intervals[i].half_width;
    residuals[i] = std::abs(y_true[i] - intervals[i].center);
  }
  report.mad = mean_abs_deviation(centers, y_true);
  try {
    report.auroc = discrimination_auroc(widths, residuals);
  } catch (const DataError&) {
    // single-class labeling; leave unset
  }
  const WidthStats ws = width_stats(intervals);
  report.finite_count = ws.finite_count;
  report.mean_finite_width = ws.mean_finite_width;
  return report;
}

}  // namespace lvd
