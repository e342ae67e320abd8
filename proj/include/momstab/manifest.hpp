#ifndef MOMSTAB_MANIFEST_HPP
#define MOMSTAB_MANIFEST_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

namespace momstab {

inline constexpr const char* kToolVersion = "0.1.0";

// Every CLI run writes one manifest next to its outputs. A manifest holds
// the fully resolved options, so re-running from it reproduces the output
// files byte for byte (seeds included).
struct RunManifest {
  std::string command;
  nlohmann::json options;  // resolved command options
  std::uint64_t seed = 0;  // 0 when the command has no randomness
  std::string tool_version = kToolVersion;
  double duration_seconds = 0.0;

  bool operator==(const RunManifest& other) const = default;
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);
void save_manifest(const RunManifest& m, const std::string& path);
RunManifest load_manifest(const std::string& path);

}  // namespace momstab

#endif
