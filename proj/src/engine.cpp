#include "firecover/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace firecover {

void validate(const SimConfig& config) {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument(field + ": " + why);
    };
    if (config.steps < 0) fail("run.steps", "must be >= 0");
    if (!(config.dt > 0.0)) fail("run.dt", "must be positive");
    if (config.grid.nx < 1 || config.grid.ny < 1) fail("world.cells", "grid must be at least 1x1");
    if (!(config.grid.cell > 0.0)) fail("world.cell_size", "must be positive");
    if (config.uav_count < 1) fail("uavs.count", "must be >= 1");
    if (config.spawn_radius < 0.0) fail("uavs.spawn_radius", "must be >= 0");
    if (config.spawn_min_separation < 0.0) fail("uavs.spawn_min_separation", "must be >= 0");
    if (!(config.camera.focal_length > 0.0)) fail("camera.focal_length", "must be positive");
    if (!(config.camera.pixel_area > 0.0)) fail("camera.pixel_area", "must be positive");
    if (!(config.camera.half_angle_x > 0.0) || config.camera.half_angle_x >= std::numbers::pi / 2) {
        fail("camera.half_angle_x_deg", "must lie in (0, 90)");
    }
    if (!(config.camera.half_angle_y > 0.0) || config.camera.half_angle_y >= std::numbers::pi / 2) {
        fail("camera.half_angle_y_deg", "must lie in (0, 90)");
    }
    if (!(config.camera.intensity_max > config.camera.intensity_min)) {
        fail("camera.intensity_max", "must exceed camera.intensity_min");
    }
    if (config.camera.intensity_min < 0.0) fail("camera.intensity_min", "must be >= 0");
    if (config.camera.importance_scale < 0.0) fail("camera.importance_scale", "must be >= 0");
    try {
        validate(config.gains);
    } catch (const std::invalid_argument& e) {
        fail("gains", e.what());
    }
    if (config.gradient.edge_samples < 1) fail("controller.edge_samples", "must be >= 1");
    if (!(config.gradient.altitude_guard > 0.0)) fail("controller.altitude_guard", "must be positive");
    if (config.front_count < 0) fail("fire.front_count", "must be >= 0");
    if (config.front_scatter < 0.0) fail("fire.front_scatter", "must be >= 0");
    if (!(config.front_sigma.x > 0.0) || !(config.front_sigma.y > 0.0)) {
        fail("fire.sigma", "must be positive");
    }
    if (config.spread_rate < 0.0) fail("fire.spread_rate", "must be >= 0");
    if (config.decay_rate < 0.0) fail("fire.decay_rate", "must be >= 0");
    if (config.ignition_threshold < 0.0) fail("fire.ignition_threshold", "must be >= 0");
    if (!(config.source_strength > 0.0)) fail("fire.source_strength", "must be positive");
    if (config.prune_floor < 0.0) fail("fire.prune_floor", "must be >= 0");
    if (config.spawn_budget < 0) fail("fire.spawn_budget", "must be >= 0");
    if (config.wind.speed_stddev < 0.0) fail("wind.speed_stddev", "must be >= 0");
    if (config.wind.azimuth_stddev < 0.0) fail("wind.azimuth_stddev", "must be >= 0");
    if (config.trace_stride < 1) fail("output.trace_stride", "must be >= 1");
    if (config.snapshot_stride < 0) fail("output.snapshot_stride", "must be >= 0");
    if (config.frame_stride < 0) fail("output.frame_stride", "must be >= 0");
}

FireModelParams fire_params(const SimConfig& config) {
    FireModelParams p;
    p.grid = config.grid;
    p.decay_rate = config.decay_rate;
    p.dt = config.dt;
    p.ignition_threshold = config.ignition_threshold;
    p.source_strength = config.source_strength;
    p.prune_floor = config.prune_floor;
    p.spawn_budget = config.spawn_budget;
    p.front_sigma = config.front_sigma;
    return p;
}

namespace {

std::vector<UavPose> pose_snapshot(const WorldState& state) {
    std::vector<UavPose> poses;
    poses.reserve(state.uavs.size());
    for (const UavControlState& u : state.uavs) poses.push_back(u.pose);
    return poses;
}

std::vector<Vec3> positions3(const WorldState& state) {
    std::vector<Vec3> out;
    out.reserve(state.uavs.size());
    for (const UavControlState& u : state.uavs) out.push_back(to_vec3(u.pose));
    return out;
}

void refresh_physical(WorldState& state, double radius) {
    std::vector<Vec3> pos = positions3(state);
    state.physical.assign(pos.size(), {});
    for (int i = 0; i < static_cast<int>(pos.size()); ++i) {
        state.physical[i] = physical_neighbors(pos, i, radius);
    }
}

bool is_boundary_cell(const SimConfig& config, const IntensityGrid& grid,
                      const std::vector<std::uint8_t>& burning, int idx) {
    if (!burning[idx]) return false;
    return clamp_intensity(grid.cells[idx], config.camera) <= 0.5 * config.camera.intensity_max;
}

}  // namespace

WorldState init_world(const SimConfig& config) {
    validate(config);
    WorldState state;
    state.rng = Rng(config.seed);
    state.step = 0;

    // UAVs spawn on the ground, laterally scattered with a minimum separation.
    // Greedy sampling can paint itself into a corner on tight packings, so a
    // stuck round discards the whole set and starts over on the same stream.
    std::vector<Vec2> spots;
    for (int round = 0; static_cast<int>(spots.size()) < config.uav_count; ++round) {
        if (round >= 100) {
            throw std::invalid_argument(
                "uavs.spawn_min_separation: cannot place " + std::to_string(config.uav_count) +
                " vehicles inside the spawn region");
        }
        spots.clear();
        while (static_cast<int>(spots.size()) < config.uav_count) {
            Vec2 p;
            bool placed = false;
            for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
                p = {state.rng.uniform(config.spawn_center.x - config.spawn_radius,
                                       config.spawn_center.x + config.spawn_radius),
                     state.rng.uniform(config.spawn_center.y - config.spawn_radius,
                                       config.spawn_center.y + config.spawn_radius)};
                placed = true;
                for (const Vec2& q : spots) {
                    if (norm(p - q) < config.spawn_min_separation) {
                        placed = false;
                        break;
                    }
                }
            }
            if (!placed) break;
            spots.push_back(p);
        }
    }
    for (int i = 0; i < config.uav_count; ++i) {
        UavControlState uav;
        uav.id = i;
        uav.pose = {spots[i], 0.0};
        uav.virtual_target = uav.pose;
        uav.fire_seen = false;
        state.uavs.push_back(uav);
    }

    std::vector<FireFront> fronts;
    for (int k = 0; k < config.front_count; ++k) {
        FireFront f;
        f.pos = {state.rng.uniform(config.front_center.x - config.front_scatter,
                                   config.front_center.x + config.front_scatter),
                 state.rng.uniform(config.front_center.y - config.front_scatter,
                                   config.front_center.y + config.front_scatter)};
        f.pos = clamp_to(config.grid.world(), f.pos);
        f.sigma = config.front_sigma;
        f.birth_step = 0;
        f.spread_rate = config.spread_rate;
        fronts.push_back(f);
    }
    state.fire = FireModel(fire_params(config), std::move(fronts));

    std::vector<FireFront> all = state.fire.fronts();
    state.intensity = rasterize(all, 0, fire_params(config));
    state.burning = fire_region(state.intensity, config.ignition_threshold);
    state.last_command.assign(state.uavs.size(), Vec3{});
    refresh_physical(state, config.gains.comm_radius);
    return state;
}

StepMetrics compute_metrics(const WorldState& state, const SimConfig& config) {
    StepMetrics m;
    m.step = state.step;

    const int n = static_cast<int>(state.uavs.size());
    std::vector<Vec3> pos = positions3(state);
    double min_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            min_dist = std::min(min_dist, norm(pos[i] - pos[j]));
        }
    }
    m.min_pairwise_distance = n < 2 ? 0.0 : min_dist;

    double alt_sum = 0.0, alt_max = 0.0;
    for (const UavControlState& u : state.uavs) {
        m.fire_seen_count += u.fire_seen ? 1 : 0;
        alt_sum += u.pose.altitude;
        alt_max = std::max(alt_max, u.pose.altitude);
    }
    m.mean_altitude = n > 0 ? alt_sum / n : 0.0;
    m.max_altitude = alt_max;

    // Boundary coverage via per-UAV cell ranges; engine tests cross-check this
    // against a per-cell scan.
    const GridSpec& g = config.grid;
    std::vector<std::uint8_t> covered(state.burning.size(), 0);
    std::vector<UavPose> poses = pose_snapshot(state);
    for (const UavPose& p : poses) {
        Rect fov = fov_rect(p, config.camera).rect();
        Rect world = g.world();
        if (!world.intersects(fov)) continue;
        int x0 = g.cell_x(std::max(fov.lo.x, world.lo.x));
        int x1 = g.cell_x(std::min(fov.hi.x, world.hi.x));
        int y0 = g.cell_y(std::max(fov.lo.y, world.lo.y));
        int y1 = g.cell_y(std::min(fov.hi.y, world.hi.y));
        for (int iy = y0; iy <= y1; ++iy) {
            for (int ix = x0; ix <= x1; ++ix) {
                if (fov.contains(g.center(ix, iy))) covered[g.index(ix, iy)] = 1;
            }
        }
    }
    long boundary_total = 0, boundary_covered = 0;
    for (std::size_t idx = 0; idx < state.burning.size(); ++idx) {
        if (!is_boundary_cell(config, state.intensity, state.burning, static_cast<int>(idx))) continue;
        ++boundary_total;
        if (covered[idx]) ++boundary_covered;
    }
    m.boundary_coverage =
        boundary_total == 0 ? 0.0 : static_cast<double>(boundary_covered) / boundary_total;

    m.objective = objective_value(poses, config.camera, state.intensity, state.burning,
                                  config.gains.prior_footprint);
    return m;
}

StepMetrics step_world(WorldState& state, const SimConfig& config) {
    const int now = state.step + 1;

    // Phase 1: the fire moves first.
    WindSample wind = sample_wind(state.rng, config.wind);
    state.fire.advance(wind, now);
    std::vector<FireFront> all = state.fire.fronts();
    state.intensity = rasterize(all, now, fire_params(config));
    state.burning = fire_region(state.intensity, config.ignition_threshold);

    // Phase 2: freeze what every controller may read.
    std::vector<UavPose> poses = pose_snapshot(state);
    refresh_physical(state, config.gains.comm_radius);
    std::vector<Vec3> pos3 = positions3(state);

    // Phase 3: controllers, each writing only its own slot.
    const int n = static_cast<int>(state.uavs.size());
    std::vector<UavControlState> next(state.uavs);
    std::vector<Vec3> command(n);
    for (int i = 0; i < n; ++i) {
        UavControlState& me = next[i];
        SensedPatch patch = build_patch(i, poses, config.camera, state.intensity, state.burning);
        bool seen = zeta_update(patch, me.fire_seen, config.zeta_latch);
        if (seen && !me.fire_seen) me.virtual_target = me.pose;
        me.fire_seen = seen;
        if (seen) {
            Vec3 gradient;
            try {
                gradient = coverage_gradient(patch, config.camera, config.gains.prior_footprint,
                                             config.gradient);
            } catch (const std::domain_error& e) {
                throw std::domain_error("uav " + std::to_string(i) + " at step " +
                                        std::to_string(now) + ": " + e.what());
            }
            me.virtual_target = update_virtual_pose(me.virtual_target, gradient, config.gains);
        }
        std::vector<std::pair<int, Vec3>> neighbors;
        neighbors.reserve(state.physical[i].size());
        for (int j : state.physical[i]) neighbors.push_back({j, pos3[j]});
        command[i] = control_law(me, config.rendezvous, neighbors, config.gains);
    }

    // Phase 4: integrate and clamp altitude at the ground.
    for (int i = 0; i < n; ++i) {
        UavControlState& me = next[i];
        me.pose.lateral.x += config.dt * command[i].x;
        me.pose.lateral.y += config.dt * command[i].y;
        me.pose.altitude = std::max(0.0, me.pose.altitude + config.dt * command[i].z);
    }
    state.uavs = std::move(next);
    state.last_command = std::move(command);
    refresh_physical(state, config.gains.comm_radius);

    // Phase 5 & 6: metrics on the new state, then the clock.
    state.step = now;
    return compute_metrics(state, config);
}

RunSummary run(const SimConfig& config, const RunSinks& sinks) {
    WorldState state = init_world(config);
    RunSummary summary;
    summary.min_distance_over_run = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> ever_seen(state.uavs.size(), 0);
    int ever_seen_count = 0;

    auto emit_traces = [&](const WorldState& s) {
        if (!sinks.trace) return;
        for (std::size_t i = 0; i < s.uavs.size(); ++i) {
            const UavControlState& u = s.uavs[i];
            TraceRecord r;
            r.step = s.step;
            r.uav_id = static_cast<int>(i);
            r.x = u.pose.lateral.x;
            r.y = u.pose.lateral.y;
            r.z = u.pose.altitude;
            r.fire_seen = u.fire_seen ? 1 : 0;
            r.u_x = s.last_command[i].x;
            r.u_y = s.last_command[i].y;
            r.u_z = s.last_command[i].z;
            r.physical_neighbors = static_cast<int>(s.physical[i].size());
            sinks.trace(r);
        }
    };
    auto note = [&](const StepMetrics& m) {
        if (state.uavs.size() > 1) {
            summary.min_distance_over_run =
                std::min(summary.min_distance_over_run, m.min_pairwise_distance);
        }
        // First step by which every UAV has had fire in view at least once.
        for (std::size_t i = 0; i < state.uavs.size(); ++i) {
            if (!ever_seen[i] && state.uavs[i].fire_seen) {
                ever_seen[i] = 1;
                ++ever_seen_count;
            }
        }
        if (summary.first_step_all_fire_seen < 0 &&
            ever_seen_count == static_cast<int>(state.uavs.size())) {
            summary.first_step_all_fire_seen = m.step;
        }
        summary.final_boundary_coverage = m.boundary_coverage;
        if (sinks.metrics) sinks.metrics(m);
    };

    note(compute_metrics(state, config));
    emit_traces(state);
    if (sinks.snapshot && config.snapshot_stride > 0) sinks.snapshot(state);
    if (sinks.frame && config.frames && config.frame_stride > 0) sinks.frame(state);

    for (int t = 1; t <= config.steps; ++t) {
        StepMetrics m = step_world(state, config);
        note(m);
        if (t % config.trace_stride == 0) emit_traces(state);
        if (sinks.snapshot && config.snapshot_stride > 0 && t % config.snapshot_stride == 0) {
            sinks.snapshot(state);
        }
        if (sinks.frame && config.frames && config.frame_stride > 0 && t % config.frame_stride == 0) {
            sinks.frame(state);
        }
    }
    summary.steps_completed = state.step;
    if (state.uavs.size() < 2) summary.min_distance_over_run = 0.0;
    return summary;
}

}  // namespace firecover
