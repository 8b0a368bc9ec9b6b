#include "firecover/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

namespace firecover {

namespace {

void set_half_angle_x(SimConfig& c, double degrees) {
    c.half_angle_x_deg = degrees;
    c.camera.half_angle_x = degrees * std::numbers::pi / 180.0;
}

void set_half_angle_y(SimConfig& c, double degrees) {
    c.half_angle_y_deg = degrees;
    c.camera.half_angle_y = degrees * std::numbers::pi / 180.0;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    double out = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || v.empty()) {
        throw ConfigError(line, key, "expected a number, got '" + v + "'");
    }
    return out;
}

int to_int(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    long out = std::strtol(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || v.empty()) {
        throw ConfigError(line, key, "expected an integer, got '" + v + "'");
    }
    return static_cast<int>(out);
}

std::uint64_t to_u64(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    unsigned long long out = std::strtoull(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || v.empty()) {
        throw ConfigError(line, key, "expected an unsigned integer, got '" + v + "'");
    }
    return out;
}

bool to_onoff(const std::string& v, int line, const std::string& key) {
    if (v == "on" || v == "true") return true;
    if (v == "off" || v == "false") return false;
    throw ConfigError(line, key, "expected on/off, got '" + v + "'");
}

using Setter = std::function<void(SimConfig&, const std::string&, int, const std::string&)>;

std::map<std::string, Setter> build_table() {
    std::map<std::string, Setter> t;
    auto dbl = [&](const char* name, auto assign) {
        t[name] = [assign](SimConfig& c, const std::string& v, int line, const std::string& key) {
            assign(c, to_double(v, line, key));
        };
    };
    auto itg = [&](const char* name, auto assign) {
        t[name] = [assign](SimConfig& c, const std::string& v, int line, const std::string& key) {
            assign(c, to_int(v, line, key));
        };
    };

    itg("run.steps", [](SimConfig& c, int v) { c.steps = v; });
    dbl("run.dt", [](SimConfig& c, double v) { c.dt = v; });
    t["run.seed"] = [](SimConfig& c, const std::string& v, int line, const std::string& key) {
        c.seed = to_u64(v, line, key);
    };

    dbl("world.origin_x", [](SimConfig& c, double v) { c.grid.origin.x = v; });
    dbl("world.origin_y", [](SimConfig& c, double v) { c.grid.origin.y = v; });
    dbl("world.cell_size", [](SimConfig& c, double v) { c.grid.cell = v; });
    itg("world.cells_x", [](SimConfig& c, int v) { c.grid.nx = v; });
    itg("world.cells_y", [](SimConfig& c, int v) { c.grid.ny = v; });

    itg("uavs.count", [](SimConfig& c, int v) { c.uav_count = v; });
    dbl("uavs.spawn_center_x", [](SimConfig& c, double v) { c.spawn_center.x = v; });
    dbl("uavs.spawn_center_y", [](SimConfig& c, double v) { c.spawn_center.y = v; });
    dbl("uavs.spawn_radius", [](SimConfig& c, double v) { c.spawn_radius = v; });
    dbl("uavs.spawn_min_separation", [](SimConfig& c, double v) { c.spawn_min_separation = v; });

    dbl("rendezvous.x", [](SimConfig& c, double v) { c.rendezvous.x = v; });
    dbl("rendezvous.y", [](SimConfig& c, double v) { c.rendezvous.y = v; });
    dbl("rendezvous.z", [](SimConfig& c, double v) { c.rendezvous.z = v; });

    dbl("camera.pixel_area", [](SimConfig& c, double v) { c.camera.pixel_area = v; });
    dbl("camera.focal_length", [](SimConfig& c, double v) { c.camera.focal_length = v; });
    dbl("camera.half_angle_x_deg", set_half_angle_x);
    dbl("camera.half_angle_y_deg", set_half_angle_y);
    dbl("camera.intensity_min", [](SimConfig& c, double v) { c.camera.intensity_min = v; });
    dbl("camera.intensity_max", [](SimConfig& c, double v) { c.camera.intensity_max = v; });
    dbl("camera.importance_scale", [](SimConfig& c, double v) { c.camera.importance_scale = v; });

    dbl("gains.gradient_gain", [](SimConfig& c, double v) { c.gains.gradient_gain = v; });
    dbl("gains.virtual_step", [](SimConfig& c, double v) { c.gains.virtual_step = v; });
    dbl("gains.rendezvous_gain", [](SimConfig& c, double v) { c.gains.rendezvous_gain = v; });
    dbl("gains.tracking_gain", [](SimConfig& c, double v) { c.gains.tracking_gain = v; });
    dbl("gains.repulse_strength", [](SimConfig& c, double v) { c.gains.repulse_strength = v; });
    dbl("gains.safe_distance", [](SimConfig& c, double v) { c.gains.safe_distance = v; });
    dbl("gains.comm_radius", [](SimConfig& c, double v) { c.gains.comm_radius = v; });
    dbl("gains.prior_footprint", [](SimConfig& c, double v) { c.gains.prior_footprint = v; });
    dbl("gains.coincidence_eps", [](SimConfig& c, double v) { c.gains.coincidence_eps = v; });

    t["controller.zeta_latch"] = [](SimConfig& c, const std::string& v, int line,
                                    const std::string& key) {
        c.zeta_latch = to_onoff(v, line, key);
    };
    t["controller.gradient_quadrature"] = [](SimConfig& c, const std::string& v, int line,
                                             const std::string& key) {
        if (v == "exact") {
            c.gradient.quadrature = GradientQuadrature::exact;
        } else if (v == "sampled") {
            c.gradient.quadrature = GradientQuadrature::sampled;
        } else {
            throw ConfigError(line, key, "expected exact or sampled, got '" + v + "'");
        }
    };
    itg("controller.edge_samples", [](SimConfig& c, int v) { c.gradient.edge_samples = v; });
    dbl("controller.altitude_guard", [](SimConfig& c, double v) { c.gradient.altitude_guard = v; });

    itg("fire.front_count", [](SimConfig& c, int v) { c.front_count = v; });
    dbl("fire.front_center_x", [](SimConfig& c, double v) { c.front_center.x = v; });
    dbl("fire.front_center_y", [](SimConfig& c, double v) { c.front_center.y = v; });
    dbl("fire.front_scatter", [](SimConfig& c, double v) { c.front_scatter = v; });
    dbl("fire.sigma_x", [](SimConfig& c, double v) { c.front_sigma.x = v; });
    dbl("fire.sigma_y", [](SimConfig& c, double v) { c.front_sigma.y = v; });
    dbl("fire.spread_rate", [](SimConfig& c, double v) { c.spread_rate = v; });
    dbl("fire.decay_rate", [](SimConfig& c, double v) { c.decay_rate = v; });
    dbl("fire.ignition_threshold", [](SimConfig& c, double v) { c.ignition_threshold = v; });
    dbl("fire.source_strength", [](SimConfig& c, double v) { c.source_strength = v; });
    dbl("fire.prune_floor", [](SimConfig& c, double v) { c.prune_floor = v; });
    itg("fire.spawn_budget", [](SimConfig& c, int v) { c.spawn_budget = v; });

    dbl("wind.mean_speed", [](SimConfig& c, double v) { c.wind.mean_speed = v; });
    dbl("wind.speed_stddev", [](SimConfig& c, double v) { c.wind.speed_stddev = v; });
    dbl("wind.mean_azimuth_rad", [](SimConfig& c, double v) { c.wind.mean_azimuth = v; });
    dbl("wind.azimuth_stddev_rad", [](SimConfig& c, double v) { c.wind.azimuth_stddev = v; });

    itg("output.trace_stride", [](SimConfig& c, int v) { c.trace_stride = v; });
    itg("output.snapshot_stride", [](SimConfig& c, int v) { c.snapshot_stride = v; });
    itg("output.frame_stride", [](SimConfig& c, int v) { c.frame_stride = v; });
    t["output.frames"] = [](SimConfig& c, const std::string& v, int line, const std::string& key) {
        c.frames = to_onoff(v, line, key);
    };
    return t;
}

const std::map<std::string, Setter>& table() {
    static const std::map<std::string, Setter> t = build_table();
    return t;
}

bool known_section(const std::string& name) {
    const std::string prefix = name + ".";
    auto it = table().lower_bound(prefix);
    return it != table().end() && it->first.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

SimConfig paper_sec5_preset() {
    SimConfig c;
    c.steps = 6000;
    c.dt = 1.0;
    c.seed = 42;

    c.grid = {{0.0, 0.0}, 7.5, 200, 200};

    c.uav_count = 10;
    c.spawn_center = {300.0, 300.0};
    c.spawn_radius = 50.0;
    c.spawn_min_separation = 30.0;

    c.rendezvous = {500.0, 500.0, 60.0};

    c.camera.pixel_area = 1e-4;
    c.camera.focal_length = 10.0;
    set_half_angle_x(c, 30.0);
    set_half_angle_y(c, 45.0);
    c.camera.intensity_min = 5.0;
    c.camera.intensity_max = 100.0;
    c.camera.importance_scale = 1e-3;

    c.gains.gradient_gain = 1.0;
    c.gains.virtual_step = 20.0;
    c.gains.rendezvous_gain = 0.02;
    c.gains.tracking_gain = 0.05;
    c.gains.repulse_strength = 3e5;
    c.gains.safe_distance = 30.0;
    c.gains.comm_radius = 100.0;
    c.gains.prior_footprint = 0.02;
    c.gains.coincidence_eps = 1e-9;

    c.zeta_latch = false;
    c.gradient.quadrature = GradientQuadrature::exact;
    c.gradient.edge_samples = 64;
    c.gradient.altitude_guard = 1e-6;

    c.front_count = 5;
    c.front_center = {500.0, 500.0};
    c.front_scatter = 40.0;
    c.front_sigma = {10.0, 10.0};
    c.spread_rate = 0.5;
    c.decay_rate = 0.01;
    c.ignition_threshold = 5.0;
    c.source_strength = 2.0 * std::numbers::pi * 100.0 * 100.0;  // fresh source peaks at saturation
    c.prune_floor = 1e-3;
    c.spawn_budget = 64;

    c.wind.mean_speed = 5.0;
    c.wind.speed_stddev = 2.0;
    c.wind.mean_azimuth = std::numbers::pi / 8.0;
    c.wind.azimuth_stddev = 1.0;

    c.trace_stride = 1;
    c.snapshot_stride = 500;
    c.frame_stride = 500;
    c.frames = false;
    return c;
}

SimConfig parse_config(const std::string& text) {
    SimConfig config = paper_sec5_preset();
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::size_t comment = raw.find_first_of("#;");
        std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "", "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(line_no, "", "empty section name");
            if (!known_section(section)) {
                throw ConfigError(line_no, section, "unknown section");
            }
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line_no, "", "expected key = value, got '" + line + "'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "", "empty key");
        if (section.empty()) throw ConfigError(line_no, key, "key appears before any [section]");
        std::string full = section + "." + key;
        auto it = table().find(full);
        if (it == table().end()) {
            throw ConfigError(line_no, full, "unknown key");
        }
        it->second(config, value, line_no, full);
    }
    try {
        validate(config);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, "", e.what());
    }
    return config;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string emit_config(const SimConfig& c) {
    std::ostringstream out;
    out << "[run]\n"
        << "steps = " << c.steps << "\n"
        << "dt = " << fmt(c.dt) << "\n"
        << "seed = " << c.seed << "\n\n";
    out << "[world]\n"
        << "origin_x = " << fmt(c.grid.origin.x) << "\n"
        << "origin_y = " << fmt(c.grid.origin.y) << "\n"
        << "cell_size = " << fmt(c.grid.cell) << "\n"
        << "cells_x = " << c.grid.nx << "\n"
        << "cells_y = " << c.grid.ny << "\n\n";
    out << "[uavs]\n"
        << "count = " << c.uav_count << "\n"
        << "spawn_center_x = " << fmt(c.spawn_center.x) << "\n"
        << "spawn_center_y = " << fmt(c.spawn_center.y) << "\n"
        << "spawn_radius = " << fmt(c.spawn_radius) << "\n"
        << "spawn_min_separation = " << fmt(c.spawn_min_separation) << "\n\n";
    out << "[rendezvous]\n"
        << "x = " << fmt(c.rendezvous.x) << "\n"
        << "y = " << fmt(c.rendezvous.y) << "\n"
        << "z = " << fmt(c.rendezvous.z) << "\n\n";
    out << "[camera]\n"
        << "pixel_area = " << fmt(c.camera.pixel_area) << "\n"
        << "focal_length = " << fmt(c.camera.focal_length) << "\n"
        << "half_angle_x_deg = " << fmt(c.half_angle_x_deg) << "\n"
        << "half_angle_y_deg = " << fmt(c.half_angle_y_deg) << "\n"
        << "intensity_min = " << fmt(c.camera.intensity_min) << "\n"
        << "intensity_max = " << fmt(c.camera.intensity_max) << "\n"
        << "importance_scale = " << fmt(c.camera.importance_scale) << "\n\n";
    out << "[gains]\n"
        << "gradient_gain = " << fmt(c.gains.gradient_gain) << "\n"
        << "virtual_step = " << fmt(c.gains.virtual_step) << "\n"
        << "rendezvous_gain = " << fmt(c.gains.rendezvous_gain) << "\n"
        << "tracking_gain = " << fmt(c.gains.tracking_gain) << "\n"
        << "repulse_strength = " << fmt(c.gains.repulse_strength) << "\n"
        << "safe_distance = " << fmt(c.gains.safe_distance) << "\n"
        << "comm_radius = " << fmt(c.gains.comm_radius) << "\n"
        << "prior_footprint = " << fmt(c.gains.prior_footprint) << "\n"
        << "coincidence_eps = " << fmt(c.gains.coincidence_eps) << "\n\n";
    out << "[controller]\n"
        << "zeta_latch = " << (c.zeta_latch ? "on" : "off") << "\n"
        << "gradient_quadrature = "
        << (c.gradient.quadrature == GradientQuadrature::exact ? "exact" : "sampled") << "\n"
        << "edge_samples = " << c.gradient.edge_samples << "\n"
        << "altitude_guard = " << fmt(c.gradient.altitude_guard) << "\n\n";
    out << "[fire]\n"
        << "front_count = " << c.front_count << "\n"
        << "front_center_x = " << fmt(c.front_center.x) << "\n"
        << "front_center_y = " << fmt(c.front_center.y) << "\n"
        << "front_scatter = " << fmt(c.front_scatter) << "\n"
        << "sigma_x = " << fmt(c.front_sigma.x) << "\n"
        << "sigma_y = " << fmt(c.front_sigma.y) << "\n"
        << "spread_rate = " << fmt(c.spread_rate) << "\n"
        << "decay_rate = " << fmt(c.decay_rate) << "\n"
        << "ignition_threshold = " << fmt(c.ignition_threshold) << "\n"
        << "source_strength = " << fmt(c.source_strength) << "\n"
        << "prune_floor = " << fmt(c.prune_floor) << "\n"
        << "spawn_budget = " << c.spawn_budget << "\n\n";
    out << "[wind]\n"
        << "mean_speed = " << fmt(c.wind.mean_speed) << "\n"
        << "speed_stddev = " << fmt(c.wind.speed_stddev) << "\n"
        << "mean_azimuth_rad = " << fmt(c.wind.mean_azimuth) << "\n"
        << "azimuth_stddev_rad = " << fmt(c.wind.azimuth_stddev) << "\n\n";
    out << "[output]\n"
        << "trace_stride = " << c.trace_stride << "\n"
        << "snapshot_stride = " << c.snapshot_stride << "\n"
        << "frame_stride = " << c.frame_stride << "\n"
        << "frames = " << (c.frames ? "on" : "off") << "\n";
    return out.str();
}

}  // namespace firecover
