#include "manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "hinrisk/error.hpp"

namespace hinrisk::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, bytes.data(), bytes.size());
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::Usage, path.string() + ": cannot open for checksum");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

ArtifactSet::ArtifactSet(fs::path out_dir) : out_dir_(std::move(out_dir)) {
  fs::create_directories(out_dir_);
}

fs::path ArtifactSet::declare(const std::string& name) {
  fs::path p = out_dir_ / name;
  artifacts_.push_back(p);
  return p;
}

void ArtifactSet::write_manifest(const std::string& subcommand,
                                 const nlohmann::json& resolved_config, std::uint64_t seed,
                                 const std::vector<fs::path>& inputs) {
  nlohmann::json m;
  m["subcommand"] = subcommand;
  m["config"] = resolved_config;
  m["config_sha256"] = sha256_hex(resolved_config.dump());
  m["seed"] = seed;
  m["inputs"] = nlohmann::json::object();
  for (const auto& p : inputs) m["inputs"][p.string()] = sha256_file(p);
  m["artifacts"] = nlohmann::json::object();
  for (const auto& p : artifacts_) m["artifacts"][p.filename().string()] = sha256_file(p);
  std::ofstream out(out_dir_ / "manifest.json");
  out << m.dump(2) << '\n';
}

void ArtifactSet::remove_partial() {
  for (const auto& p : artifacts_) {
    std::error_code ec;
    fs::remove(p, ec);
  }
}

}  // namespace hinrisk::cli
