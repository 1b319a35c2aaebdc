#include "lienard/tolerances.hpp"

#include <cstdlib>
#include <sstream>
#include <utility>
#include <vector>

#include "lienard/errors.hpp"

namespace lienard {

namespace {

std::vector<std::pair<const char*, double Tolerances::*>> fields() {
  return {{"oracle_rel", &Tolerances::oracle_rel},   {"vanish_abs", &Tolerances::vanish_abs},
          {"root_width", &Tolerances::root_width},   {"quad_abs", &Tolerances::quad_abs},
          {"quad_rel", &Tolerances::quad_rel},       {"rk_tol", &Tolerances::rk_tol},
          {"event_tol", &Tolerances::event_tol},     {"design_residual", &Tolerances::design_residual},
          {"cycle_rel", &Tolerances::cycle_rel}};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Tolerances Tolerances::parse(const std::string& text) { return parse(text, Tolerances{}); }

Tolerances Tolerances::parse(const std::string& text, Tolerances base) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "tolerance entry '" + item + "' lacks '='");
    const std::string key = trim(item.substr(0, eq));
    const std::string val = trim(item.substr(eq + 1));
    double v = 0.0;
    std::size_t pos = 0;
    try {
      v = std::stod(val, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != val.size() || val.empty() || !(v > 0))
      throw Error(ErrorKind::InvalidInput, "tolerance '" + key + "' needs a positive number, got '" + val + "'");
    bool found = false;
    for (const auto& [name, member] : fields()) {
      if (key == name) {
        base.*member = v;
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::InvalidInput, "unknown tolerance '" + key + "'");
  }
  return base;
}

Tolerances Tolerances::from_env() {
  const char* env = std::getenv("LIENARD_TOLERANCES");
  return env ? parse(env) : Tolerances{};
}

std::string Tolerances::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, member] : fields()) {
    os << (first ? "" : ";") << name << '=' << this->*member;
    first = false;
  }
  return os.str();
}

}  // namespace lienard
