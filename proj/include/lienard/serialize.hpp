#pragma once

#include <json.hpp>

#include "lienard/half_power_poly.hpp"
#include "lienard/ring.hpp"
#include "lienard/system.hpp"

namespace lienard {

using json = nlohmann::json;

// RingElem   <-> [{"q": "num/den", "e": int, "p": int}, ...]
// HalfPowerPoly <-> {"k": term-list, ...}   (k = doubled exponent of h)
// LienardSystem <-> {"case", "m", "n", "a0", "a1", "b0", "b1", "c", "lambda", "eps"}
//
// On input a ring entry may also be a JSON number (promoted by its exact binary
// expansion) or a string "num/den".

json to_json(const RingElem& r);
RingElem ring_from_json(const json& j);

json to_json(const HalfPowerPoly& p);
HalfPowerPoly hp_from_json(const json& j);

json to_json(const LienardSystem& sys);
LienardSystem system_from_json(const json& j);

}  // namespace lienard
