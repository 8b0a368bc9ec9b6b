#include "firecover/controller.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace firecover {

void validate(const ControlGains& gains) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            throw std::invalid_argument(std::string("gains: ") + name + " must be positive");
        }
    };
    positive(gains.gradient_gain, "gradient_gain");
    positive(gains.virtual_step, "virtual_step");
    positive(gains.rendezvous_gain, "rendezvous_gain");
    positive(gains.tracking_gain, "tracking_gain");
    positive(gains.repulse_strength, "repulse_strength");
    positive(gains.safe_distance, "safe_distance");
    positive(gains.comm_radius, "comm_radius");
    positive(gains.prior_footprint, "prior_footprint");
    if (!(gains.safe_distance < gains.comm_radius)) {
        throw std::invalid_argument("gains: safe_distance must be smaller than comm_radius");
    }
}

UavPose update_virtual_pose(const UavPose& virtual_target, Vec3 gradient,
                            const ControlGains& gains) {
    double step = gains.virtual_step * gains.gradient_gain;
    return {{virtual_target.lateral.x - step * gradient.x,
             virtual_target.lateral.y - step * gradient.y},
            virtual_target.altitude - step * gradient.z};
}

Vec3 attract(const Vec3& target, const Vec3& pose, double gain) {
    return -gain * (pose - target);
}

Vec3 repulse(const Vec3& pose, int self_id,
             std::span<const std::pair<int, Vec3>> neighbors, const ControlGains& gains) {
    Vec3 u{};
    for (const auto& [id, other] : neighbors) {
        Vec3 delta = pose - other;
        double dist = norm(delta);
        if (dist >= gains.safe_distance) continue;
        if (dist <= gains.coincidence_eps) {
            double eps = gains.coincidence_eps;
            double sign = self_id > id ? 1.0 : -1.0;
            u += (gains.repulse_strength / (eps * eps)) * Vec3{sign, 0.0, 0.0};
            continue;
        }
        double mag = gains.repulse_strength * (1.0 / dist - 1.0 / gains.safe_distance) /
                     (dist * dist * dist);
        u += mag * delta;
    }
    return u;
}

Vec3 control_law(const UavControlState& state, const Vec3& rendezvous,
                 std::span<const std::pair<int, Vec3>> neighbors, const ControlGains& gains) {
    Vec3 pose = to_vec3(state.pose);
    Vec3 u = repulse(pose, state.id, neighbors, gains);
    if (state.fire_seen) {
        u += attract(to_vec3(state.virtual_target), pose, gains.tracking_gain);
    } else {
        u += attract(rendezvous, pose, gains.rendezvous_gain);
    }
    return u;
}

bool zeta_update(const SensedPatch& patch, bool previous, bool latch) {
    bool seen = patch_sees_fire(patch);
    return latch ? (previous || seen) : seen;
}

}  // namespace firecover
