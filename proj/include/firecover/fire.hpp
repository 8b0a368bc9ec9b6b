#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "firecover/geometry.hpp"
#include "firecover/wind.hpp"

namespace firecover {

// One heat source. Intensity contribution at age a = t - birth_step is
//   strength / (2*pi*sx*sy) * exp(-((x-px)^2/sx^2 + (y-py)^2/sy^2)/2) * exp(-decay_rate*a)
// where strength is a model-level multiplier (1 keeps the unit-mass density form).
struct FireFront {
    Vec2 pos;
    Vec2 sigma{10.0, 10.0};
    int birth_step = 0;
    double spread_rate = 0.0;  // steady-state rate of spread R fed into the ellipse offset
};

struct FireModelParams {
    GridSpec grid;
    double decay_rate = 0.0;          // lambda
    double dt = 1.0;
    double ignition_threshold = 0.0;  // cells at or above this intensity count as burning
    double source_strength = 1.0;
    double prune_floor = 0.0;         // 0 keeps every front forever
    int spawn_budget = 64;            // max trail fronts spawned per step
    Vec2 front_sigma{10.0, 10.0};     // sigma given to spawned trail fronts
};

// Ellipse geometry of the spread model: length/breadth ratio from wind speed,
// collapsed to the per-step center offset c. c(R, 0) == 0 exactly and c grows
// monotonically with wind speed toward R/2.
double ellipse_offset(double spread_rate, double wind_speed);

// Displacement applied to one front for one step.
Vec2 spread_displacement(double offset, double azimuth, double dt);

// Advances every front by dt under the shared wind sample and clamps the
// result to the world rectangle. Pure: the returned list holds the moved
// fronts in input order; birth steps and sigmas are untouched.
std::vector<FireFront> spread_step(std::vector<FireFront> fronts, const WindSample& wind,
                                   double dt, const Rect& world);

// Total intensity at a point, Eq.-of-state for both the rasterizer and tests.
double intensity_at(Vec2 q, std::span<const FireFront> fronts, int step, double decay_rate,
                    double source_strength = 1.0);

struct IntensityGrid {
    GridSpec spec;
    int step = 0;
    std::vector<double> cells;  // row-major, iy*nx + ix

    double at(int ix, int iy) const { return cells[spec.index(ix, iy)]; }
};

// Samples every cell center. Contributions below window_floor of a front's
// current peak are skipped via a bounding window; window_floor = 0 disables
// the window and evaluates every front on every cell.
IntensityGrid rasterize(std::span<const FireFront> fronts, int step, const FireModelParams& params,
                        double window_floor = 1e-12);

// Burning mask: cells with intensity >= threshold. One byte per cell.
std::vector<std::uint8_t> fire_region(const IntensityGrid& grid, double threshold);

// Growth bookkeeping around the pure spread step. Tips integrate the wind
// displacement every step; the first time a tip enters a never-burned cell it
// freezes its pre-move state into the trail (the old front persists) and
// restarts fresh at the advanced position (the new front). The burned set is
// monotone, so no cell hosts more than one spawn over a run.
class FireModel {
public:
    FireModel() = default;
    FireModel(FireModelParams params, std::vector<FireFront> initial_fronts);

    void advance(const WindSample& wind, int step_now);

    // All live heat sources: tips first, then trail, in stable order.
    std::vector<FireFront> fronts() const;
    const std::vector<FireFront>& tips() const { return tips_; }
    const std::vector<FireFront>& trail() const { return trail_; }
    const FireModelParams& params() const { return params_; }
    int burned_cell_count() const { return burned_count_; }

private:
    void mark_burned(Vec2 pos);
    bool burned_at(Vec2 pos) const;
    void prune_trail(int step_now);

    FireModelParams params_;
    std::vector<FireFront> tips_;
    std::vector<FireFront> trail_;
    std::vector<std::uint8_t> burned_;
    int burned_count_ = 0;
};

}  // namespace firecover
