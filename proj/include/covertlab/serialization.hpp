#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "covertlab/input_synthesis.hpp"
#include "covertlab/key_length.hpp"
#include "covertlab/noise.hpp"
#include "covertlab/scaling.hpp"
#include "covertlab/simulator.hpp"

namespace covertlab {

using json = nlohmann::json;

/// {"family": <name>, "params": {<name>: <number>, ...}}
json model_to_json(const NoiseModel& model);

/// Strict parse: unknown families, missing or unknown params are rejected.
NoiseModel model_from_json(const json& j);

json to_json(const ScalingResult& result);
json to_json(const IntegrabilityReport& report);
json to_json(const InputLaw& law);
json to_json(const SimulationReport& report);
json to_json(const KeyLengthReport& report);

/// One CLI invocation's parsed configuration. Serializes round-trip; unknown
/// fields are rejected on parse.
struct RunConfig {
    std::string command;
    json model;   // model_to_json form, or null for model-free commands
    json params;  // command-specific scalars
    std::string format = "json";  // json | csv
    std::uint64_t seed = 0;

    bool operator==(const RunConfig&) const = default;
};

json to_json(const RunConfig& config);
RunConfig run_config_from_json(const json& j);

}  // namespace covertlab
