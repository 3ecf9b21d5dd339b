#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace carnot::cli {

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

// Header row plus one row per sample: time, then every column of `blocks`
// side by side.
std::string csv_table(const std::vector<std::string>& header, const std::vector<double>& times,
                      const std::vector<const Eigen::MatrixXd*>& blocks);

// Writes through a temporary file in the same directory and renames it into
// place, so readers never see a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

// Accumulates output files in memory and commits them together at the end
// of a successful run.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string contents) { files_.emplace_back(name, std::move(contents)); }
  void add_json(const std::string& name, const nlohmann::json& doc) { add(name, doc.dump(2) + "\n"); }
  // Returns the written paths.
  std::vector<std::filesystem::path> commit() const;

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

// UTC time in ISO 8601, for sidecar metadata only.
std::string utc_timestamp();

}  // namespace carnot::cli
