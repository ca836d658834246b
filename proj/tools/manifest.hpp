#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hinrisk::cli {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

// Collects the artifacts a run produces; on success writes
// <out_dir>/manifest.json with the resolved config hash, seed and per-file
// checksums, on failure removes everything written so far.
class ArtifactSet {
 public:
  explicit ArtifactSet(std::filesystem::path out_dir);

  const std::filesystem::path& dir() const { return out_dir_; }
  std::filesystem::path declare(const std::string& name);  // registers and returns the path

  void write_manifest(const std::string& subcommand, const nlohmann::json& resolved_config,
                      std::uint64_t seed,
                      const std::vector<std::filesystem::path>& inputs);
  void remove_partial();  // deletes declared artifacts (failure path)

 private:
  std::filesystem::path out_dir_;
  std::vector<std::filesystem::path> artifacts_;
};

}  // namespace hinrisk::cli
