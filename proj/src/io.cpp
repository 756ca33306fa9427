#include "tripod/io.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace tripod {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // folds -0 into 0
  return buf;
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += header[i];
  }
  buf_ += '\n';
}

CsvBuilder& CsvBuilder::cell(double v) { return cell(format_double(v)); }

CsvBuilder& CsvBuilder::cell(long long v) { return cell(std::to_string(v)); }

CsvBuilder& CsvBuilder::cell(const std::string& v) {
  if (row_open_) buf_ += ',';
  buf_ += v;
  row_open_ = true;
  ++filled_;
  return *this;
}

void CsvBuilder::end_row() {
  if (filled_ != columns_)
    throw std::logic_error("csv row has " + std::to_string(filled_) + " cells, expected " + std::to_string(columns_));
  buf_ += '\n';
  row_open_ = false;
  filled_ = 0;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::string sha256_hex(const std::string& content) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(content.data(), content.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

nlohmann::json params_to_json(const LatticeParams& p) {
  return {{"eps", p.eps},
          {"omega_p", p.omega_p},
          {"omega_c", p.omega_c()},
          {"alpha", p.alpha},
          {"alpha_raw", p.alpha_fold.raw},
          {"alpha_mirrored", p.alpha_fold.mirrored},
          {"alpha_reflected", p.alpha_fold.reflected},
          {"delta", p.delta},
          {"gamma", p.gamma},
          {"a", p.a},
          {"n_harmonics", p.n_harmonics},
          {"n_q", p.n_q},
          {"n_x", p.n_x},
          {"n_bands", p.n_bands}};
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["params"] = params_to_json(params);
  j["grids"] = grids;
  j["version"] = version;
  j["duration_s"] = duration_s;
  j["digests"] = digests;
  if (!extra.empty()) j["extra"] = extra;
  return j;
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

}  // namespace tripod
