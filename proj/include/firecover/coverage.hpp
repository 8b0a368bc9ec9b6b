#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "firecover/fire.hpp"
#include "firecover/geometry.hpp"
#include "firecover/sensing.hpp"

namespace firecover {

// One grid cell as seen from a single UAV: center inside that UAV's FOV.
struct PatchCell {
    int cell_index = 0;
    Vec2 center;
    double clamped_intensity = 0.0;
    bool burning = false;
    std::uint32_t coverers_begin = 0;  // range into SensedPatch::coverers
    std::uint32_t coverers_end = 0;
};

struct PatchCoverer {
    int id = 0;
    double footprint = 0.0;
};

struct PatchNeighbor {
    int id = 0;
    UavPose pose;
    Rect fov;
    double footprint = 0.0;
};

// Everything one controller evaluation may read: the UAV's own FOV cells with
// clamped intensities, burning flags and covering cameras, plus the coverage
// neighbors' geometry, all frozen at the start of the step.
struct SensedPatch {
    int self_id = -1;
    UavPose self_pose;
    Rect self_fov{};
    double self_footprint = 0.0;
    std::vector<PatchCell> cells;
    std::vector<PatchCoverer> coverers;   // flat storage for PatchCell ranges, self included
    std::vector<PatchNeighbor> neighbors; // cameras whose FOV intersects self_fov
    const IntensityGrid* grid = nullptr;
    const std::vector<std::uint8_t>* burning = nullptr;
};

SensedPatch build_patch(int self, std::span<const UavPose> poses, const CameraIntrinsics& cam,
                        const IntensityGrid& grid, const std::vector<std::uint8_t>& burning);

// exact: integrals over the exact arrangement of FOV rectangles against the
// cellwise-constant intensity field; the analytic gradient is then the true
// derivative of objective_value wherever it is differentiable.
// sampled: cell-center membership for the interior plus fixed-count midpoint
// sampling along the edges. Cheaper, approximate.
enum class GradientQuadrature { exact, sampled };

struct GradientOptions {
    GradientQuadrature quadrature = GradientQuadrature::exact;
    int edge_samples = 64;
    double altitude_guard = 1e-6;  // reject |focal_length - z| below this
};

// Coverage objective restricted to burning cells:
//   O = sum over burning cells of kappa * (I_max - clamp(I)) * integral of h over the cell,
// h evaluated on the exact sub-rectangle arrangement induced by the FOVs.
double objective_value(std::span<const UavPose> poses, const CameraIntrinsics& cam,
                       const IntensityGrid& grid, const std::vector<std::uint8_t>& burning,
                       double prior);

// Partial derivatives of the objective with respect to this UAV's lateral
// position (x, y) and altitude (z): boundary transport terms over the four FOV
// edges plus the interior resolution term
//   -2 h^2 / ((S1/b^2) (b - z)^3)
// integrated over the burning overlap. Returns exact zeros when the patch
// holds no burning content. Throws std::domain_error when the altitude sits on
// the focal length within opts.altitude_guard.
Vec3 coverage_gradient(const SensedPatch& patch, const CameraIntrinsics& cam, double prior,
                       const GradientOptions& opts);

// True when any cell of the patch is burning.
bool patch_sees_fire(const SensedPatch& patch);

}  // namespace firecover
