#include "lienard/presets.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lienard/errors.hpp"
#include "lienard/serialize.hpp"

namespace lienard {

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, "'" + path + "': " + e.what());
  }
}

}  // namespace

std::string presets_path() {
  if (const char* env = std::getenv("LIENARD_PRESETS"); env && *env) return env;
  return std::string(LIENARD_DATA_DIR) + "/presets.json";
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  const json all = read_json(presets_path());
  for (const auto& [key, val] : all.items()) names.push_back(key);
  return names;
}

LienardSystem load_preset(const std::string& name) {
  const json all = read_json(presets_path());
  if (!all.contains(name)) {
    std::string known;
    for (const auto& [key, val] : all.items()) known += (known.empty() ? "" : ", ") + key;
    throw Error(ErrorKind::InvalidInput, "unknown preset '" + name + "' (known: " + known + ")");
  }
  try {
    return system_from_json(all.at(name));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidInput, "preset '" + name + "': " + e.what());
  }
}

LienardSystem resolve_system(const std::string& name_or_path) {
  if (std::filesystem::is_regular_file(name_or_path)) {
    json doc = read_json(name_or_path);
    if (doc.contains("system")) doc = doc.at("system");
    if (doc.is_string()) return load_preset(doc.get<std::string>());
    return system_from_json(doc);
  }
  return load_preset(name_or_path);
}

}  // namespace lienard
