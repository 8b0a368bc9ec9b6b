#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "firecover/controller.hpp"
#include "firecover/coverage.hpp"
#include "firecover/fire.hpp"
#include "firecover/geometry.hpp"
#include "firecover/rng.hpp"
#include "firecover/sensing.hpp"
#include "firecover/wind.hpp"

namespace firecover {

struct SimConfig {
    // run
    int steps = 0;
    double dt = 1.0;
    std::uint64_t seed = 0;
    // world
    GridSpec grid;
    // uavs
    int uav_count = 0;
    Vec2 spawn_center;
    double spawn_radius = 0.0;
    double spawn_min_separation = 0.0;
    // rendezvous
    Vec3 rendezvous;
    // camera (camera.half_angle_* are radians; the _deg fields are the
    // config-facing values and the only ones serialized)
    CameraIntrinsics camera;
    double half_angle_x_deg = 0.0;
    double half_angle_y_deg = 0.0;
    // gains
    ControlGains gains;
    // controller
    bool zeta_latch = false;
    GradientOptions gradient;
    // fire
    int front_count = 0;
    Vec2 front_center;
    double front_scatter = 0.0;
    Vec2 front_sigma{10.0, 10.0};
    double spread_rate = 0.0;
    double decay_rate = 0.0;
    double ignition_threshold = 0.0;
    double source_strength = 1.0;
    double prune_floor = 0.0;
    int spawn_budget = 64;
    // wind
    WindParams wind;
    // output
    int trace_stride = 1;
    int snapshot_stride = 0;  // 0 disables
    int frame_stride = 0;
    bool frames = false;
};

// Field-level checks; throws std::invalid_argument naming the field.
void validate(const SimConfig& config);

FireModelParams fire_params(const SimConfig& config);

struct TraceRecord {
    int step = 0;
    int uav_id = 0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    int fire_seen = 0;
    double u_x = 0.0;
    double u_y = 0.0;
    double u_z = 0.0;
    int physical_neighbors = 0;
};

struct StepMetrics {
    int step = 0;
    double min_pairwise_distance = 0.0;  // 3-D; 0 when fewer than two UAVs
    int fire_seen_count = 0;
    double boundary_coverage = 0.0;      // burning cells with clamped I <= Imax/2 under some FOV
    double mean_altitude = 0.0;
    double max_altitude = 0.0;
    double objective = 0.0;
};

struct RunSummary {
    int steps_completed = 0;
    double final_boundary_coverage = 0.0;
    double min_distance_over_run = 0.0;
    int first_step_all_fire_seen = -1;
};

struct WorldState {
    int step = 0;
    Rng rng{0};
    FireModel fire;
    IntensityGrid intensity;
    std::vector<std::uint8_t> burning;
    std::vector<UavControlState> uavs;
    std::vector<Vec3> last_command;
    std::vector<std::vector<int>> physical;  // neighbor ids per UAV, current poses
};

// All sinks optional; called on their configured strides.
struct RunSinks {
    std::function<void(const TraceRecord&)> trace;
    std::function<void(const StepMetrics&)> metrics;
    std::function<void(const WorldState&)> snapshot;
    std::function<void(const WorldState&)> frame;
};

// Spawns UAVs on the ground around the spawn center (min-separation enforced),
// scatters the initial fronts, rasterizes step 0. Draw order is fixed: UAV
// positions first, then front positions.
WorldState init_world(const SimConfig& config);

// One step in fixed phase order: wind+spread+rasterize, frozen snapshots,
// controllers against the snapshot, integration (z clamped at 0), metrics.
// Controller evaluation is order-independent; permutation must not change any
// output. Controller numeric-domain errors are rethrown with UAV id and step.
StepMetrics step_world(WorldState& state, const SimConfig& config);

StepMetrics compute_metrics(const WorldState& state, const SimConfig& config);

RunSummary run(const SimConfig& config, const RunSinks& sinks);

}  // namespace firecover
