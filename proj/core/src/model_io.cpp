#include "lvd/model_io.hpp"

#include <fstream>
#include <json.hpp>

#include "lvd/errors.hpp"

namespace lvd {

using nlohmann::json;

void save_model(const ModelArtifact& artifact, const std::filesystem::path& path) {
  const MetricModel& model = artifact.model;
  model.validate();

  json doc;
  doc["format_version"] = artifact.format_version;
  doc["k"] = model.k;
  doc["smooth"] = artifact.smooth;
  doc["seed"] = artifact.seed;
  doc["A"] = {{"rows", model.A.rows()}, {"cols", model.A.cols()}};
  auto& data = doc["A"]["data"] = json::array();
  for (Eigen::Index r = 0; r < model.A.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.A.cols(); ++c) data.push_back(model.A(r, c));
  }
  doc["norm"]["means"] = std::vector<double>(model.norm.means.begin(), model.norm.means.end());
  doc["norm"]["stds"] = std::vector<double>(model.norm.stds.begin(), model.norm.stds.end());
  doc["norm"]["kept_dims"] = model.norm.kept_dims;
  doc["summary"]["final_loss"] = artifact.summary.final_loss;
  doc["summary"]["batches_run"] = artifact.summary.batches_run;

  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

ModelArtifact load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": malformed model artifact: " + e.what());
  }

  try {
    ModelArtifact artifact;
    artifact.format_version = doc.at("format_version").get<int>();
    if (artifact.format_version != kModelFormatVersion) {
      throw DataError(path.string() + ": unsupported format_version " +
                      std::to_string(artifact.format_version));
    }
    artifact.smooth = doc.at("smooth").get<bool>();
    artifact.seed = doc.at("seed").get<std::uint64_t>();
    artifact.summary.final_loss = doc.at("summary").at("final_loss").get<double>();
    artifact.summary.batches_run = doc.at("summary").at("batches_run").get<int>();

    MetricModel& model = artifact.model;
    model.k = doc.at("k").get<int>();
    const auto& a = doc.at("A");
    const Eigen::Index rows = a.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = a.at("cols").get<Eigen::Index>();
    const auto& data = a.at("data");
    if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
      throw DataError(path.string() + ": A data does not match its declared shape");
    }
    model.A.resize(rows, cols);
    std::size_t idx = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) model.A(r, c) = data[idx++].get<double>();
    }

    const auto means = doc.at("norm").at("means").get<std::vector<double>>();
    const auto stds = doc.at("norm").at("stds").get<std::vector<double>>();
    if (means.size() != stds.size()) {
      throw DataError(path.string() + ": norm means and stds differ in length");
    }
    model.norm.means = Eigen::Map<const Vector>(means.data(), static_cast<Eigen::Index>(means.size()));
    model.norm.stds = Eigen::Map<const Vector>(stds.data(), static_cast<Eigen::Index>(stds.size()));
    model.norm.kept_dims = doc.at("norm").at("kept_dims").get<std::vector<int>>();

    model.validate();
    return artifact;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": malformed model artifact: " + e.what());
  }
}

}  // namespace lvd
