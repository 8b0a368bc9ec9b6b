#pragma once

#include <stdexcept>
#include <string>

#include "firecover/engine.hpp"

namespace firecover {

struct ConfigError : std::runtime_error {
    ConfigError(int line_number, std::string key_name, const std::string& message)
        : std::runtime_error(line_number > 0
                                 ? "line " + std::to_string(line_number) +
                                       (key_name.empty() ? "" : " (" + key_name + ")") + ": " +
                                       message
                                 : message),
          line(line_number),
          key(std::move(key_name)) {}
    int line;
    std::string key;
};

// The benchmark scenario: ten ground-launched UAVs, five fronts near the world
// center, the camera and wind climate of the reference wildfire setup.
SimConfig paper_sec5_preset();

// Flat key = value lines grouped under [section] headers; '#' and ';' start
// comments; unknown sections or keys are rejected with their line number. An
// empty document yields the preset defaults.
SimConfig parse_config(const std::string& text);

// Canonical form: fixed section and key order, %.17g doubles (value-exact
// round trips). emit(parse(emit(c))) == emit(c) byte for byte.
std::string emit_config(const SimConfig& config);

}  // namespace firecover
