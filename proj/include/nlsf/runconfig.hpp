#pragma once

#include <string>

#include <json.hpp>

#include "nlsf/scattering.hpp"
#include "nlsf/stability.hpp"

namespace nlsf {

/// Parse an experiment config from JSON; unknown keys are rejected.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

nlohmann::json report_to_json(const StabilityReport& rep);
nlohmann::json scattering_to_json(const ScatteringData& data);
ScatteringData scattering_from_json(const nlohmann::json& j);

} // namespace nlsf
