#include "firecover/wind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace firecover {

WindSample sample_wind(Rng& rng, const WindParams& params) {
    // Fixed draw order: speed first, then azimuth.
    double speed = std::max(0.0, rng.normal(params.mean_speed, params.speed_stddev));
    double azimuth = rng.normal(params.mean_azimuth, params.azimuth_stddev);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    azimuth = std::fmod(azimuth, two_pi);
    if (azimuth < 0.0) azimuth += two_pi;
    return {speed, azimuth};
}

}  // namespace firecover
