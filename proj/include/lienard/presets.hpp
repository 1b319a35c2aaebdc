#pragma once

#include <string>
#include <vector>

#include "lienard/system.hpp"

namespace lienard {

/// Location of the shipped presets file; LIENARD_PRESETS overrides it.
std::string presets_path();

std::vector<std::string> preset_names();

/// Throws InvalidInput for unknown names.
LienardSystem load_preset(const std::string& name);

/// A preset name or the path of a system JSON document.
LienardSystem resolve_system(const std::string& name_or_path);

}  // namespace lienard
