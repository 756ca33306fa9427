#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "tripod/params.hpp"

namespace tripod {

/// Shortest round-trip independent fixed format: 17 significant digits.
std::string format_double(double v);

/// Accumulates a CSV document in memory so it can be written in one atomic step.
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);
  CsvBuilder& cell(double v);
  CsvBuilder& cell(long long v);
  CsvBuilder& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvBuilder& cell(const std::string& v);
  void end_row();
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
  bool row_open_ = false;
  std::size_t columns_ = 0, filled_ = 0;
};

/// Writes to a sibling temp file and renames it over path.
void write_atomic(const std::string& path, const std::string& content);

std::string sha256_hex(const std::string& content);

nlohmann::json params_to_json(const LatticeParams& p);

struct RunManifest {
  std::string command;
  LatticeParams params;
  nlohmann::json grids = nlohmann::json::object();
  nlohmann::json extra = nlohmann::json::object();
  std::string version;
  double duration_s = 0.0;
  std::map<std::string, std::string> digests;  ///< file name -> sha256

  nlohmann::json to_json() const;
};

/// "<out>.manifest.json"
std::string manifest_path(const std::string& out);

}  // namespace tripod
