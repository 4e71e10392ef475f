#pragma once

#include <string>

#include <json.hpp>

#include "toric/classifier.hpp"
#include "toric/divisor.hpp"
#include "toric/fan.hpp"
#include "toric/mori.hpp"

namespace toric {

inline constexpr const char* kToolVersion = "toric 0.1.0";

using Json = nlohmann::ordered_json;

/// Fan schema: {"dim": int, "rays": [[int]], "max_cones": [[int]],
/// "name"?: string}. Validation errors carry distinct codes.
Fan fan_from_json(const Json& j);
Fan fan_from_json_text(const std::string& text);
Json fan_to_json(const Fan& fan);

/// Stable content hash of the canonical fan serialization (name excluded).
std::string fan_digest(const Fan& fan);

/// Divisor schema: {"coeffs": [int or "p/q" string]}.
TorusDivisor divisor_from_json(const Json& j, const Fan& fan);
Json divisor_to_json(const TorusDivisor& d);

Json rat_to_json(const Rat& q);  // integer or "p/q" string

Json report_to_json(const ClassificationReport& rep, const Fan& fan);
Json contraction_to_json(const ContractionResult& c);

}  // namespace toric
