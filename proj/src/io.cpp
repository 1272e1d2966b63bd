#include "dyncomp/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <stdexcept>

namespace dyncomp {

std::string sha256_hex(const std::string &bytes)
{
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string encode_ppm(std::size_t width, std::size_t height, const std::vector<std::uint8_t> &rgb)
{
  if (rgb.size() != 3 * width * height) {
    throw std::invalid_argument("encode_ppm: pixel buffer does not match the size");
  }
  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(rgb.begin(), rgb.end());
  return out;
}

RunManifest::RunManifest(std::string command, nlohmann::json parameters, int precision_bits)
    : command_(std::move(command)), parameters_(std::move(parameters)),
      precision_bits_(precision_bits)
{
}

void RunManifest::write_artifact(const std::filesystem::path &dir, const std::string &name,
                                 const std::string &bytes)
{
  std::filesystem::create_directories(dir);
  std::ofstream file(dir / name, std::ios::binary);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) {
    throw std::runtime_error("cannot write " + (dir / name).string());
  }
  artifacts_.push_back({{"path", name}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
}

nlohmann::json RunManifest::to_json() const
{
  return {{"command", command_},
          {"parameters", parameters_},
          {"tool_version", kToolVersion},
          {"precision_bits", precision_bits_},
          {"artifacts", artifacts_}};
}

void RunManifest::write(const std::filesystem::path &dir) const
{
  std::filesystem::create_directories(dir);
  std::ofstream file(dir / "manifest.json", std::ios::binary);
  file << to_json().dump(2) << "\n";
  if (!file) {
    throw std::runtime_error("cannot write manifest.json");
  }
}

} // namespace dyncomp
