#include "firecover/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace firecover {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Heat shade for a clamped intensity fraction in [0, 1]: yellow toward red.
std::string heat_color(double f) {
    int green = static_cast<int>(std::lround(220.0 * (1.0 - f)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x00", 230, green);
    return buf;
}

}  // namespace

std::string render_frame(const WorldState& state, const SimConfig& config) {
    const GridSpec& g = config.grid;
    Rect world = g.world();
    std::string svg;
    svg.reserve(1 << 16);
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(world.lo.x) + " " +
           num(world.lo.y) + " " + num(world.width()) + " " + num(world.height()) + "\">\n";
    // World y grows north; SVG y grows down. Flip once around the world box.
    svg += "<g transform=\"translate(0," + num(world.lo.y + world.hi.y) + ") scale(1,-1)\">\n";
    svg += "<rect x=\"" + num(world.lo.x) + "\" y=\"" + num(world.lo.y) + "\" width=\"" +
           num(world.width()) + "\" height=\"" + num(world.height()) + "\" fill=\"#fcfcf6\"/>\n";

    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            int idx = g.index(ix, iy);
            if (!state.burning[idx]) continue;
            double clamped = clamp_intensity(state.intensity.cells[idx], config.camera);
            double frac = config.camera.intensity_max > 0.0
                              ? clamped / config.camera.intensity_max
                              : 0.0;
            Rect cell = g.cell_rect(ix, iy);
            svg += "<rect x=\"" + num(cell.lo.x) + "\" y=\"" + num(cell.lo.y) + "\" width=\"" +
                   num(cell.width()) + "\" height=\"" + num(cell.height()) + "\" fill=\"" +
                   heat_color(frac) + "\"/>\n";
        }
    }

    for (const UavControlState& u : state.uavs) {
        Rect fov = fov_rect(u.pose, config.camera).rect();
        if (fov.width() <= 0.0 || fov.height() <= 0.0) continue;
        svg += "<rect x=\"" + num(fov.lo.x) + "\" y=\"" + num(fov.lo.y) + "\" width=\"" +
               num(fov.width()) + "\" height=\"" + num(fov.height()) +
               "\" fill=\"#3050c0\" fill-opacity=\"0.05\" stroke=\"#3050c0\" "
               "stroke-width=\"1\"/>\n";
    }

    for (std::size_t i = 0; i < state.uavs.size(); ++i) {
        for (int j : state.physical[i]) {
            if (j <= static_cast<int>(i)) continue;  // one segment per pair
            Vec2 a = state.uavs[i].pose.lateral;
            Vec2 b = state.uavs[j].pose.lateral;
            svg += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) +
                   "\" y2=\"" + num(b.y) + "\" stroke=\"#1040ff\" stroke-width=\"0.8\"/>\n";
        }
    }

    double marker = std::max(world.width(), world.height()) / 200.0;
    for (const UavControlState& u : state.uavs) {
        svg += "<circle cx=\"" + num(u.pose.lateral.x) + "\" cy=\"" + num(u.pose.lateral.y) +
               "\" r=\"" + num(marker) + "\" fill=\"#101010\"/>\n";
    }

    svg += "</g>\n</svg>\n";
    return svg;
}

void write_frame(const WorldState& state, const SimConfig& config, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << render_frame(state, config);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace firecover
