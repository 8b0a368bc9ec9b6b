#pragma once

#include <span>
#include <utility>

#include "firecover/coverage.hpp"
#include "firecover/geometry.hpp"
#include "firecover/sensing.hpp"

namespace firecover {

struct ControlGains {
    double gradient_gain = 1.0;     // scales the raw objective gradient
    double virtual_step = 1.0;      // step applied to the virtual target per update
    double rendezvous_gain = 0.0;   // pull toward the rendezvous point while no fire is seen
    double tracking_gain = 0.0;     // pull toward the virtual target once fire is seen
    double repulse_strength = 0.0;
    double safe_distance = 0.0;     // repulsion engages strictly below this
    double comm_radius = 0.0;       // physical neighborhood radius; must exceed safe_distance
    double prior_footprint = 1.0;   // prior-information constant fused with camera footprints
    double coincidence_eps = 1e-9;  // below this separation the repulsion direction is id-derived
};

// Throws std::invalid_argument naming the offending field.
void validate(const ControlGains& gains);

struct UavControlState {
    int id = -1;
    UavPose pose;
    UavPose virtual_target;  // descended along the coverage gradient while fire is seen
    bool fire_seen = false;
};

// virtual_target - virtual_step * gradient_gain * gradient.
UavPose update_virtual_pose(const UavPose& virtual_target, Vec3 gradient,
                            const ControlGains& gains);

// -gain * (pose - target).
Vec3 attract(const Vec3& target, const Vec3& pose, double gain);

// Sum over neighbors closer than safe_distance of
//   repulse_strength * (1/dist - 1/safe_distance) * (1/dist^3) * (pose - other).
// Zero at or beyond safe_distance. Coincident pairs (dist <= coincidence_eps)
// get a deterministic x-axis push of magnitude repulse_strength/eps^2, signed
// by id order so the pair forces stay equal and opposite.
Vec3 repulse(const Vec3& pose, int self_id,
             std::span<const std::pair<int, Vec3>> neighbors, const ControlGains& gains);

// Combined law: repulsion plus the rendezvous pull before fire is seen, the
// virtual-target pull after.
Vec3 control_law(const UavControlState& state, const Vec3& rendezvous,
                 std::span<const std::pair<int, Vec3>> neighbors, const ControlGains& gains);

// Whether the patch puts fire in view this step; with latching enabled a UAV
// that has seen fire keeps reporting it.
bool zeta_update(const SensedPatch& patch, bool previous, bool latch);

}  // namespace firecover
