#include "lvd/normalization.hpp"

#include <cmath>

#include "lvd/errors.hpp"

namespace lvd {

NormalizationStats fit_normalization(const Matrix& embeddings) {
  const Eigen::Index h = embeddings.rows();
  const Eigen::Index n = embeddings.cols();
  if (n < 2) throw DataError("fit normalization: need at least 2 embeddings");
  if (!embeddings.allFinite()) throw DataError("fit normalization: non-finite embedding entry");

  NormalizationStats stats;
  stats.means = embeddings.rowwise().mean();
  stats.stds = Vector(h);
  for (Eigen::Index d = 0; d < h; ++d) {
    const double var =
        (embeddings.row(d).array() - stats.means[d]).square().sum() / static_cast<double>(n - 1);
    stats.stds[d] = std::sqrt(var);
    if (stats.stds[d] >= kDeadDimThreshold) stats.kept_dims.push_back(static_cast<int>(d));
  }
  return stats;
}

Vector normalize(const Vector& e, const NormalizationStats& norm) {
  if (e.size() != norm.means.size()) {
    throw DataError("normalize: embedding length does not match fitted dimension");
  }
  Vector out(norm.kept_dim());
  for (int j = 0; j < norm.kept_dim(); ++j) {
    const int d = norm.kept_dims[j];
    out[j] = (e[d] - norm.means[d]) / norm.stds[d];
  }
  return out;
}

Matrix normalize_all(const Matrix& embeddings, const NormalizationStats& norm) {
  if (embeddings.rows() != norm.means.size()) {
    throw DataError("normalize: embedding length does not match fitted dimension");
  }
  Matrix out(norm.kept_dim(), embeddings.cols());
  for (int j = 0; j < norm.kept_dim(); ++j) {
    const int d = norm.kept_dims[j];
    out.row(j) = (embeddings.row(d).array() - norm.means[d]) / norm.stds[d];
  }
  return out;
}

}  // namespace lvd
