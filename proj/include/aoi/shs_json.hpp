#pragma once

// JSON form of an ShsModel ("aoi.shs-model/1"):
//
//   {
//     "schema": "aoi.shs-model/1",
//     "name": "mm11",
//     "processors": 2,
//     "age_dim": 3,
//     "states": ["0", "1"],
//     "activity": [[1, 0], [1, 1]],          // [step1, step2] busy processors per state
//     "transitions": [
//       {"from": 0, "to": 1, "rate": "mu1",   "reset": ["x0", "0", "x1"]},
//       {"from": 1, "to": 1, "rate": "mu1",   "reset": ["x0", "0", "x2"]},
//       {"from": 1, "to": 0, "rate": "mu2",   "reset": ["x2", "x1", "x2"]}
//     ]
//   }
//
// "rate" is "mu1", "mu2" or "<k>*mu1" / "<k>*mu2" with integer k >= 1.
// Reset column j is "0" (zero) or "x<k>" (copy input component k).
// "schema", "name" and "processors" are optional on input.

#include <nlohmann/json.hpp>
#include <string>

#include "aoi/shs.hpp"

namespace aoi {

inline constexpr const char* kShsModelSchema = "aoi.shs-model/1";

nlohmann::json model_to_json(const ShsModel& model);

/// Throws std::invalid_argument naming the offending field.  Structural
/// checks (index ranges, irreducibility) are left to validate_model.
ShsModel model_from_json(const nlohmann::json& j);

std::string format_rate(const RateSpec& rate);
RateSpec parse_rate(const std::string& text);

}  // namespace aoi
