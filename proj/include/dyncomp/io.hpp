#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dyncomp {

inline constexpr const char *kToolVersion = "0.1.0";

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string &bytes);

/// Binary portable pixmap (P6), rows top to bottom, 3 bytes per pixel.
std::string encode_ppm(std::size_t width, std::size_t height, const std::vector<std::uint8_t> &rgb);

/// Parameters, version, precision and digests of everything a command wrote.
class RunManifest {
public:
  RunManifest(std::string command, nlohmann::json parameters, int precision_bits);

  /// Writes `bytes` to dir/name and records its digest.
  void write_artifact(const std::filesystem::path &dir, const std::string &name,
                      const std::string &bytes);

  nlohmann::json to_json() const;
  /// Writes manifest.json next to the artifacts.
  void write(const std::filesystem::path &dir) const;

private:
  std::string command_;
  nlohmann::json parameters_;
  int precision_bits_;
  nlohmann::json artifacts_ = nlohmann::json::array();
};

} // namespace dyncomp
