#pragma once

#include "firecover/rng.hpp"

namespace firecover {

// Azimuth is measured clockwise from +y (north), so 0 blows north and pi/2 east.
struct WindParams {
    double mean_speed = 0.0;
    double speed_stddev = 0.0;
    double mean_azimuth = 0.0;
    double azimuth_stddev = 0.0;
};

struct WindSample {
    double speed = 0.0;    // >= 0
    double azimuth = 0.0;  // wrapped into [0, 2*pi)
};

// One sample per simulation step, shared by every front. Speed draws are
// clamped at zero; azimuth draws wrap.
WindSample sample_wind(Rng& rng, const WindParams& params);

}  // namespace firecover
