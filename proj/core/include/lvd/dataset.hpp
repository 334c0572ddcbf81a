#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvd/conformal.hpp"
#include "lvd/types.hpp"

namespace lvd {

/// Parsed dataset CSV: header e0..e{h-1},y[,y_hat][,sigma_hat], any column
/// order, all cells finite decimals. One embedding per column of the matrix.
struct Dataset {
  Matrix embeddings;  // h x n
  Vector y;
  std::optional<Vector> y_hat;
  std::optional<Vector> sigma_hat;

  int h() const { return static_cast<int>(embeddings.rows()); }
  int n() const { return static_cast<int>(embeddings.cols()); }
};

Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const Dataset& data, const std::filesystem::path& path);

/// Calibration persistence: normalized embeddings e0..e{h'-1}, residual r,
/// signed residual r_signed, optional sigma column.
void save_calibration(const CalibrationSet& cal, const std::filesystem::path& path);
CalibrationSet load_calibration(const std::filesystem::path& path);

/// One line of intervals.csv: header index,alpha,method,center,lower,upper.
/// Unbounded interval ends are written as the literal tokens inf / -inf.
struct IntervalRow {
  int index;
  double alpha;
  std::string method;
  Interval interval;
};

void save_intervals(std::span<const IntervalRow> rows, const std::filesystem::path& path);
std::vector<IntervalRow> load_intervals(const std::filesystem::path& path);

}  // namespace lvd
