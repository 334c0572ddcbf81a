#include "lvd/dataset.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "lvd/csv.hpp"
#include "lvd/errors.hpp"

namespace lvd {

namespace {

std::string cell_context(const std::string& column, std::size_t data_row) {
  // Header is line 1, first data row line 2.
  return "line " + std::to_string(data_row + 2) + ", column " + column;
}

// Maps e<i> headers to dimension indices; returns -1 for non-embedding names.
int embedding_dim(const std::string& name) {
  if (name.size() < 2 || name[0] != 'e') return -1;
  int dim = 0;
  const auto result = std::from_chars(name.data() + 1, name.data() + name.size(), dim);
  if (result.ec != std::errc() || result.ptr != name.data() + name.size() || dim < 0) return -1;
  return dim;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);

  std::map<int, std::size_t> dim_to_col;
  int y_col = -1, y_hat_col = -1, sigma_col = -1;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    const int dim = embedding_dim(name);
    if (dim >= 0) {
      if (!dim_to_col.emplace(dim, c).second) {
        throw DataError(path.string() + ": duplicate embedding column " + name);
      }
    } else if (name == "y") {
      y_col = static_cast<int>(c);
    } else if (name == "y_hat") {
      y_hat_col = static_cast<int>(c);
    } else if (name == "sigma_hat") {
      sigma_col = static_cast<int>(c);
    } else {
      throw DataError(path.string() + ": unknown column \"" + name + "\"");
    }
  }
  if (y_col < 0) throw DataError(path.string() + ": missing y column");
  const int h = static_cast<int>(dim_to_col.size());
  for (int d = 0; d < h; ++d) {
    if (!dim_to_col.count(d)) {
      throw DataError(path.string() + ": embedding columns must be e0..e" + std::to_string(h - 1) +
                      " without gaps");
    }
  }
  if (h == 0) throw DataError(path.string() + ": no embedding columns");

  const std::size_t n = table.rows.size();
  Dataset data;
  data.embeddings.resize(h, static_cast<Eigen::Index>(n));
  data.y.resize(static_cast<Eigen::Index>(n));
  if (y_hat_col >= 0) data.y_hat = Vector(static_cast<Eigen::Index>(n));
  if (sigma_col >= 0) data.sigma_hat = Vector(static_cast<Eigen::Index>(n));

  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = table.rows[r];
    for (int d = 0; d < h; ++d) {
      const std::size_t c = dim_to_col[d];
      data.embeddings(d, static_cast<Eigen::Index>(r)) =
          parse_finite(row[c], cell_context(table.header[c], r));
    }
    data.y[static_cast<Eigen::Index>(r)] =
        parse_finite(row[static_cast<std::size_t>(y_col)], cell_context("y", r));
    if (data.y_hat) {
      (*data.y_hat)[static_cast<Eigen::Index>(r)] =
          parse_finite(row[static_cast<std::size_t>(y_hat_col)], cell_context("y_hat", r));
    }
    if (data.sigma_hat) {
      (*data.sigma_hat)[static_cast<Eigen::Index>(r)] =
          parse_finite(row[static_cast<std::size_t>(sigma_col)], cell_context("sigma_hat", r));
    }
  }
  return data;
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
  std::vector<std::string> lines;
  lines.reserve(static_cast<std::size_t>(data.n()) + 1);

  std::string header;
  for (int d = 0; d < data.h(); ++d) header += "e" + std::to_string(d) + ",";
  header += "y";
  if (data.y_hat) header += ",y_hat";
  if (data.sigma_hat) header += ",sigma_hat";
  lines.push_back(std::move(header));

  for (int i = 0; i < data.n(); ++i) {
    std::string line;
    for (int d = 0; d < data.h(); ++d) line += format_double(data.embeddings(d, i)) + ",";
    line += format_double(data.y[i]);
    if (data.y_hat) line += "," + format_double((*data.y_hat)[i]);
    if (data.sigma_hat) line += "," + format_double((*data.sigma_hat)[i]);
    lines.push_back(std::move(line));
  }
  write_lines(path, lines);
}

void save_calibration(const CalibrationSet& cal, const std::filesystem::path& path) {
  const int h = static_cast<int>(cal.embeddings.rows());
  std::vector<std::string> lines;
  lines.reserve(static_cast<std::size_t>(cal.size()) + 1);

  std::string header;
  for (int d = 0; d < h; ++d) header += "e" + std::to_string(d) + ",";
  header += "r,r_signed";
  if (cal.mad_scales) header += ",sigma";
  lines.push_back(std::move(header));

  for (int i = 0; i < cal.size(); ++i) {
    std::string line;
    for (int d = 0; d < h; ++d) line += format_double(cal.embeddings(d, i)) + ",";
    line += format_double(cal.residuals[i]) + "," + format_double(cal.signed_residuals[i]);
    if (cal.mad_scales) line += "," + format_double((*cal.mad_scales)[i]);
    lines.push_back(std::move(line));
  }
  write_lines(path, lines);
}

CalibrationSet load_calibration(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);

  std::map<int, std::size_t> dim_to_col;
  int r_col = -1, signed_col = -1, sigma_col = -1;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    const int dim = embedding_dim(name);
    if (dim >= 0) {
      dim_to_col.emplace(dim, c);
    } else if (name == "r") {
      r_col = static_cast<int>(c);
    } else if (name == "r_signed") {
      signed_col = static_cast<int>(c);
    } else if (name == "sigma") {
      sigma_col = static_cast<int>(c);
    } else {
      throw DataError(path.string() + ": unknown column \"" + name + "\"");
    }
  }
  if (r_col < 0 || signed_col < 0) {
    throw DataError(path.string() + ": calibration file needs r and r_signed columns");
  }
  const int h = static_cast<int>(dim_to_col.size());
  for (int d = 0; d < h; ++d) {
    if (!dim_to_col.count(d)) throw DataError(path.string() + ": embedding columns have gaps");
  }

  const std::size_t m = table.rows.size();
  CalibrationSet cal;
  cal.embeddings.resize(h, static_cast<Eigen::Index>(m));
  cal.residuals.resize(static_cast<Eigen::Index>(m));
  cal.signed_residuals.resize(static_cast<Eigen::Index>(m));
  if (sigma_col >= 0) cal.mad_scales = Vector(static_cast<Eigen::Index>(m));

  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = table.rows[i];
    for (int d = 0; d < h; ++d) {
      cal.embeddings(d, static_cast<Eigen::Index>(i)) =
          parse_finite(row[dim_to_col[d]], cell_context(table.header[dim_to_col[d]], i));
    }
    const double r = parse_finite(row[static_cast<std::size_t>(r_col)], cell_context("r", i));
    const double rs =
        parse_finite(row[static_cast<std::size_t>(signed_col)], cell_context("r_signed", i));
    if (r != std::abs(rs)) {
      throw DataError(path.string() + ": r must equal |r_signed| (" + cell_context("r", i) + ")");
    }
    cal.residuals[static_cast<Eigen::Index>(i)] = r;
    cal.signed_residuals[static_cast<Eigen::Index>(i)] = rs;
    if (cal.mad_scales) {
      const double s =
          parse_finite(row[static_cast<std::size_t>(sigma_col)], cell_context("sigma", i));
      if (!(s > 0.0)) {
        throw DataError(path.string() + ": non-positive MAD scale (" + cell_context("sigma", i) + ")");
      }
      (*cal.mad_scales)[static_cast<Eigen::Index>(i)] = s;
    }
  }
  return cal;
}

void save_intervals(std::span<const IntervalRow> rows, const std::filesystem::path& path) {
  std::vector<std::string> lines;
  lines.reserve(rows.size() + 1);
  lines.emplace_back("index,alpha,method,center,lower,upper");
  for (const IntervalRow& row : rows) {
    const Interval& ci = row.interval;
    const std::string lower = ci.finite() ? format_double(ci.lower()) : "-inf";
    const std::string upper = ci.finite() ? format_double(ci.upper()) : "inf";
    lines.push_back(std::to_string(row.index) + "," + format_double(row.alpha) + "," + row.method +
                    "," + format_double(ci.center) + "," + lower + "," + upper);
  }
  write_lines(path, lines);
}

std::vector<IntervalRow> load_intervals(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const std::vector<std::string> expected = {"index", "alpha", "method",
                                             "center", "lower", "upper"};
  if (table.header != expected) {
    throw DataError(path.string() + ": expected header index,alpha,method,center,lower,upper");
  }

  std::vector<IntervalRow> rows;
  rows.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& cells = table.rows[i];
    IntervalRow row;
    int index = 0;
    const auto result =
        std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), index);
    if (result.ec != std::errc() || result.ptr != cells[0].data() + cells[0].size() || index < 0) {
      throw DataError(path.string() + ": bad index \"" + cells[0] + "\" (" +
                      cell_context("index", i) + ")");
    }
    row.index = index;
    row.alpha = parse_finite(cells[1], cell_context("alpha", i));
    row.method = cells[2];
    if (row.method.empty()) throw DataError(path.string() + ": empty method cell");
    row.interval.center = parse_finite(cells[3], cell_context("center", i));

    const bool lower_inf = cells[4] == "-inf";
    const bool upper_inf = cells[5] == "inf";
    if (lower_inf != upper_inf) {
      throw DataError(path.string() + ": one-sided infinite interval (" +
                      cell_context("lower", i) + ")");
    }
    if (lower_inf) {
      row.interval.half_width = kInfinity;
    } else {
      const double lower = parse_finite(cells[4], cell_context("lower", i));
      const double upper = parse_finite(cells[5], cell_context("upper", i));
      if (upper < lower) throw DataError(path.string() + ": upper < lower in interval row");
      row.interval.half_width = 0.5 * (upper - lower);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lvd
