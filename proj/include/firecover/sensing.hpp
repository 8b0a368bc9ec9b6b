#pragma once

#include <span>
#include <vector>

#include "firecover/geometry.hpp"

namespace firecover {

// Angles are radians here; config files carry degrees and convert on parse.
struct CameraIntrinsics {
    double pixel_area = 1e-4;      // S1, area of one pixel on the sensor
    double focal_length = 10.0;    // b
    double half_angle_x = 0.0;     // theta_1, FOV half-angle along x
    double half_angle_y = 0.0;     // theta_2, FOV half-angle along y
    double intensity_min = 0.0;    // sensitivity floor
    double intensity_max = 0.0;    // saturation level
    double importance_scale = 1.0; // kappa
};

struct UavPose {
    Vec2 lateral;
    double altitude = 0.0;
};

inline Vec3 to_vec3(const UavPose& p) { return {p.lateral.x, p.lateral.y, p.altitude}; }

// Ground FOV of a downward camera: axis-aligned rectangle centered under the
// UAV with half-extents z*tan(theta).
struct FovRect {
    Vec2 center;
    Vec2 half_extents;

    Rect rect() const {
        return {{center.x - half_extents.x, center.y - half_extents.y},
                {center.x + half_extents.x, center.y + half_extents.y}};
    }
};

FovRect fov_rect(const UavPose& pose, const CameraIntrinsics& cam);

// Closed membership test, evaluated edge by edge: (q - c) . n_k <= z*tan(theta_k)
// for the four outward normals.
bool fov_contains(const UavPose& pose, const CameraIntrinsics& cam, Vec2 q);

// Ground footprint of one pixel, f = S1/b^2 * (b - z)^2. Constant across the
// FOV; q must lie inside it (throws std::domain_error otherwise).
double pixel_footprint(const UavPose& pose, const CameraIntrinsics& cam, Vec2 q);

// Footprint as a function of altitude alone, no containment check.
double footprint_at_altitude(double altitude, const CameraIntrinsics& cam);

// Intensity clamped into the camera's sensed range.
double clamp_intensity(double intensity, const CameraIntrinsics& cam);

// Importance of a point: kappa * (I_max - clamped I). Saturated cells carry
// zero importance; anything at or below the floor carries the maximum.
double importance(double intensity, const CameraIntrinsics& cam);

// Harmonic fusion of the footprints of every camera covering a point with the
// prior-information constant: h = (sum 1/f_i + 1/w)^-1. No coverers -> w.
// Any zero footprint (camera at the focal altitude) collapses h to zero.
double fused_footprint(std::span<const double> footprints, double prior);

// Indices of UAVs within a 3-D ball of the given radius around pose i,
// excluding i itself. Boundary distance counts as inside.
std::vector<int> physical_neighbors(std::span<const Vec3> poses, int i, double radius);

// Indices of UAVs whose FOV rectangles intersect UAV i's (closed rectangles,
// shared edges count), excluding i itself.
std::vector<int> coverage_neighbors(std::span<const UavPose> poses, int i,
                                    const CameraIntrinsics& cam);

// Necessary-condition check used to sanity-check a communication radius
// against operating altitudes: z_i + z_j <= r / sqrt(tan^2 theta_1 + tan^2 theta_2).
// Advisory only; never used to decide neighbor sets.
bool sensing_neighbor_bound(double altitude_i, double altitude_j, const CameraIntrinsics& cam,
                            double radius);

}  // namespace firecover
