#pragma once

#include <cstdint>
#include <filesystem>

#include "lvd/metric.hpp"
#include "lvd/train.hpp"

namespace lvd {

inline constexpr int kModelFormatVersion = 1;

/// On-disk form of a trained metric: the transform, normalization stats, a
/// config echo and the training summary. Save/load round-trips A and the
/// stats bit-exactly.
struct ModelArtifact {
  int format_version = kModelFormatVersion;
  MetricModel model;
  bool smooth = true;
  std::uint64_t seed = 0;
  TrainSummary summary;
};

void save_model(const ModelArtifact& artifact, const std::filesystem::path& path);
ModelArtifact load_model(const std::filesystem::path& path);

}  // namespace lvd
