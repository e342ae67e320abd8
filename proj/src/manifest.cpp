#include "momstab/manifest.hpp"

#include <fstream>

#include "momstab/errors.hpp"

namespace momstab {

using nlohmann::json;

json manifest_to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["options"] = m.options;
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  j["duration_seconds"] = m.duration_seconds;
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.options = j.at("options");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.duration_seconds = j.at("duration_seconds").get<double>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void save_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput(path + ": cannot open for writing");
  out << manifest_to_json(m).dump(2) << "\n";
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  return manifest_from_json(j);
}

}  // namespace momstab
