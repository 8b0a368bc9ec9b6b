#pragma once

// Shared helpers for the gradient tests: randomized scenes whose FOV edges
// keep a safe clearance from grid lines and from each other, so central
// differences of the piecewise-smooth objective never straddle a kink.

#include <cmath>
#include <cstdlib>
#include <vector>

#include "firecover/coverage.hpp"
#include "firecover/fire.hpp"
#include "firecover/geometry.hpp"
#include "firecover/rng.hpp"
#include "firecover/sensing.hpp"

namespace firecover::testsupport {

struct Scene {
    GridSpec grid;
    CameraIntrinsics cam;
    double prior = 0.02;
    std::vector<UavPose> poses;
    IntensityGrid intensity;
    std::vector<std::uint8_t> burning;
};

inline CameraIntrinsics reference_camera() {
    CameraIntrinsics cam;
    cam.pixel_area = 1e-4;
    cam.focal_length = 10.0;
    cam.half_angle_x = 30.0 * 3.14159265358979323846 / 180.0;
    cam.half_angle_y = 45.0 * 3.14159265358979323846 / 180.0;
    cam.intensity_min = 5.0;
    cam.intensity_max = 100.0;
    cam.importance_scale = 1e-3;
    return cam;
}

// Distance from x to the nearest multiple of `step`.
inline double line_clearance(double x, double step) {
    double r = std::fmod(std::abs(x), step);
    return std::min(r, step - r);
}

// A pose is acceptable when its four FOV edge coordinates stay `margin` away
// from every grid line and from the edge coordinates of the poses in `taken`.
inline bool pose_clear(const UavPose& pose, const CameraIntrinsics& cam,
                       const std::vector<UavPose>& taken, double cell, double margin) {
    Rect r = fov_rect(pose, cam).rect();
    double edges[4] = {r.lo.x, r.hi.x, r.lo.y, r.hi.y};
    for (double e : edges) {
        if (line_clearance(e, cell) < margin) return false;
    }
    for (const UavPose& other : taken) {
        Rect o = fov_rect(other, cam).rect();
        if (std::abs(r.lo.x - o.lo.x) < margin || std::abs(r.lo.x - o.hi.x) < margin ||
            std::abs(r.hi.x - o.lo.x) < margin || std::abs(r.hi.x - o.hi.x) < margin ||
            std::abs(r.lo.y - o.lo.y) < margin || std::abs(r.lo.y - o.hi.y) < margin ||
            std::abs(r.hi.y - o.lo.y) < margin || std::abs(r.hi.y - o.hi.y) < margin) {
            return false;
        }
    }
    return true;
}

// Random scene on a 64x64 unit grid: frozen fire built from a handful of
// Gaussian sources, UAV poses rejected until their FOV edges are clear.
inline Scene make_scene(Rng& rng, int uav_count) {
    Scene scene;
    scene.grid = {{0.0, 0.0}, 1.0, 64, 64};
    scene.cam = reference_camera();

    FireModelParams fp;
    fp.grid = scene.grid;
    fp.decay_rate = 0.01;
    fp.ignition_threshold = scene.cam.intensity_min;

    std::vector<FireFront> fronts;
    int front_count = 3 + static_cast<int>(rng.uniform() * 4.0);
    for (int k = 0; k < front_count; ++k) {
        FireFront f;
        f.pos = {rng.uniform(10.0, 54.0), rng.uniform(10.0, 54.0)};
        f.sigma = {rng.uniform(2.0, 6.0), rng.uniform(2.0, 6.0)};
        fronts.push_back(f);
    }
    // one shared strength puts the peaks in the sensed range
    fp.source_strength = rng.uniform(30.0, 250.0) * 2.0 * 3.14159265358979323846 * 16.0;
    scene.intensity = rasterize(fronts, 0, fp, 0.0);
    scene.burning = fire_region(scene.intensity, fp.ignition_threshold);

    const double margin = 0.05;
    for (int i = 0; i < uav_count; ++i) {
        for (int attempt = 0;; ++attempt) {
            UavPose pose{{rng.uniform(6.0, 58.0), rng.uniform(6.0, 58.0)},
                         rng.uniform(14.0, 42.0)};
            if (std::abs(pose.altitude - scene.cam.focal_length) < 2.0) continue;
            if (pose_clear(pose, scene.cam, scene.poses, scene.grid.cell, margin)) {
                scene.poses.push_back(pose);
                break;
            }
            if (attempt > 5000) {
                // should not happen with these densities; fail loudly
                std::abort();
            }
        }
    }
    return scene;
}

inline double scene_objective(const Scene& scene) {
    return objective_value(scene.poses, scene.cam, scene.intensity, scene.burning, scene.prior);
}

// Central finite difference of the global objective in UAV i's coordinates.
inline Vec3 fd_gradient(const Scene& scene, int i, double eps_scale = 1e-4) {
    Vec3 out;
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<UavPose> hi = scene.poses, lo = scene.poses;
        double* hp = axis == 0   ? &hi[i].lateral.x
                     : axis == 1 ? &hi[i].lateral.y
                                 : &hi[i].altitude;
        double* lp = axis == 0   ? &lo[i].lateral.x
                     : axis == 1 ? &lo[i].lateral.y
                                 : &lo[i].altitude;
        double eps = eps_scale * std::max(1.0, std::abs(*hp));
        *hp += eps;
        *lp -= eps;
        double above = objective_value(hi, scene.cam, scene.intensity, scene.burning, scene.prior);
        double below = objective_value(lo, scene.cam, scene.intensity, scene.burning, scene.prior);
        double d = (above - below) / (2.0 * eps);
        if (axis == 0) out.x = d;
        if (axis == 1) out.y = d;
        if (axis == 2) out.z = d;
    }
    return out;
}

inline Vec3 analytic_gradient(const Scene& scene, int i, const GradientOptions& opts) {
    SensedPatch patch = build_patch(i, scene.poses, scene.cam, scene.intensity, scene.burning);
    return coverage_gradient(patch, scene.cam, scene.prior, opts);
}

// |a - b| within rel * magnitude, with an absolute floor.
inline bool close(double a, double b, double rel, double abs_floor) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

}  // namespace firecover::testsupport
