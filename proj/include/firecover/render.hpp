#pragma once

#include <string>

#include "firecover/engine.hpp"

namespace firecover {

// Self-contained SVG frame of one world state: burning cells shaded by clamped
// intensity, one FOV rectangle per UAV, blue segments between physical
// neighbors, and a marker per UAV. Element order is fixed (cells row-major,
// then FOVs, segments, markers by id), so equal states render byte-identical
// documents.
std::string render_frame(const WorldState& state, const SimConfig& config);

void write_frame(const WorldState& state, const SimConfig& config, const std::string& path);

}  // namespace firecover
