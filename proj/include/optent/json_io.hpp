#pragma once

#include <json.hpp>

#include "optent/model.hpp"
#include "optent/spectra.hpp"

namespace optent {

nlohmann::json to_json(const SystemParams& p);
SystemParams system_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NoiseModel& m);
NoiseModel noise_model_from_json(const nlohmann::json& j);

}  // namespace optent
