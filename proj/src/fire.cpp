#include "firecover/fire.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace firecover {

double ellipse_offset(double spread_rate, double wind_speed) {
    double lb = 0.936 * std::exp(0.2566 * wind_speed) +
                0.461 * std::exp(-0.1548 * wind_speed) - 0.397;
    // LB(0) = 1 exactly; the sqrt argument can only dip below zero through
    // rounding, so pin it.
    double root = std::sqrt(std::max(0.0, lb * lb - 1.0));
    if (root == 0.0) return 0.0;  // HB = 1, offset vanishes
    double hb = (lb + root) / (lb - root);
    return (spread_rate - spread_rate / hb) / 2.0;
}

Vec2 spread_displacement(double offset, double azimuth, double dt) {
    return {dt * offset * std::sin(azimuth), dt * offset * std::cos(azimuth)};
}

std::vector<FireFront> spread_step(std::vector<FireFront> fronts, const WindSample& wind,
                                   double dt, const Rect& world) {
    for (FireFront& f : fronts) {
        double c = ellipse_offset(f.spread_rate, wind.speed);
        f.pos = clamp_to(world, f.pos + spread_displacement(c, wind.azimuth, dt));
    }
    return fronts;
}

double intensity_at(Vec2 q, std::span<const FireFront> fronts, int step, double decay_rate,
                    double source_strength) {
    double total = 0.0;
    for (const FireFront& f : fronts) {
        double dx = (q.x - f.pos.x) / f.sigma.x;
        double dy = (q.y - f.pos.y) / f.sigma.y;
        double peak = source_strength / (2.0 * std::numbers::pi * f.sigma.x * f.sigma.y);
        double age = static_cast<double>(step - f.birth_step);
        total += peak * std::exp(-0.5 * (dx * dx + dy * dy)) * std::exp(-decay_rate * age);
    }
    return total;
}

IntensityGrid rasterize(std::span<const FireFront> fronts, int step, const FireModelParams& params,
                        double window_floor) {
    const GridSpec& g = params.grid;
    IntensityGrid grid{g, step, std::vector<double>(static_cast<std::size_t>(g.cell_count()), 0.0)};
    for (const FireFront& f : fronts) {
        double peak = params.source_strength /
                      (2.0 * std::numbers::pi * f.sigma.x * f.sigma.y);
        double age = static_cast<double>(step - f.birth_step);
        double amp = peak * std::exp(-params.decay_rate * age);

        int x0 = 0, x1 = g.nx - 1, y0 = 0, y1 = g.ny - 1;
        if (window_floor > 0.0 && amp > 0.0) {
            if (amp < window_floor) continue;
            // exp(-r^2/2) >= floor/amp  =>  r <= sqrt(2*log(amp/floor))
            double r = std::sqrt(2.0 * std::log(amp / window_floor));
            x0 = g.cell_x(f.pos.x - r * f.sigma.x);
            x1 = g.cell_x(f.pos.x + r * f.sigma.x);
            y0 = g.cell_y(f.pos.y - r * f.sigma.y);
            y1 = g.cell_y(f.pos.y + r * f.sigma.y);
        }
        for (int iy = y0; iy <= y1; ++iy) {
            for (int ix = x0; ix <= x1; ++ix) {
                Vec2 c = g.center(ix, iy);
                double dx = (c.x - f.pos.x) / f.sigma.x;
                double dy = (c.y - f.pos.y) / f.sigma.y;
                grid.cells[g.index(ix, iy)] += amp * std::exp(-0.5 * (dx * dx + dy * dy));
            }
        }
    }
    return grid;
}

std::vector<std::uint8_t> fire_region(const IntensityGrid& grid, double threshold) {
    std::vector<std::uint8_t> mask(grid.cells.size(), 0);
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        mask[i] = grid.cells[i] >= threshold ? 1 : 0;
    }
    return mask;
}

FireModel::FireModel(FireModelParams params, std::vector<FireFront> initial_fronts)
    : params_(std::move(params)),
      tips_(std::move(initial_fronts)),
      burned_(static_cast<std::size_t>(params_.grid.cell_count()), 0) {
    for (const FireFront& f : tips_) mark_burned(f.pos);
}

void FireModel::mark_burned(Vec2 pos) {
    const GridSpec& g = params_.grid;
    std::uint8_t& cell = burned_[g.index(g.cell_x(pos.x), g.cell_y(pos.y))];
    if (!cell) {
        cell = 1;
        ++burned_count_;
    }
}

bool FireModel::burned_at(Vec2 pos) const {
    const GridSpec& g = params_.grid;
    return burned_[g.index(g.cell_x(pos.x), g.cell_y(pos.y))] != 0;
}

void FireModel::advance(const WindSample& wind, int step_now) {
    std::vector<FireFront> moved = spread_step(tips_, wind, params_.dt, params_.grid.world());
    int budget = params_.spawn_budget;
    for (std::size_t i = 0; i < tips_.size(); ++i) {
        const FireFront& before = tips_[i];
        FireFront after = moved[i];
        if (budget > 0 && !burned_at(after.pos)) {
            trail_.push_back(before);        // old front persists where it was
            after.birth_step = step_now;     // emitted front starts bright
            mark_burned(after.pos);
            --budget;
        }
        tips_[i] = after;
    }
    prune_trail(step_now);
}

void FireModel::prune_trail(int step_now) {
    if (params_.prune_floor <= 0.0) return;
    auto dead = [&](const FireFront& f) {
        double peak = params_.source_strength /
                      (2.0 * std::numbers::pi * f.sigma.x * f.sigma.y);
        double age = static_cast<double>(step_now - f.birth_step);
        return peak * std::exp(-params_.decay_rate * age) < params_.prune_floor;
    };
    std::erase_if(trail_, dead);
}

std::vector<FireFront> FireModel::fronts() const {
    std::vector<FireFront> all;
    all.reserve(tips_.size() + trail_.size());
    all.insert(all.end(), tips_.begin(), tips_.end());
    all.insert(all.end(), trail_.begin(), trail_.end());
    return all;
}

}  // namespace firecover
