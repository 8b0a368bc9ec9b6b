#include "firecover/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace firecover {

FovRect fov_rect(const UavPose& pose, const CameraIntrinsics& cam) {
    double hx = pose.altitude * std::tan(cam.half_angle_x);
    double hy = pose.altitude * std::tan(cam.half_angle_y);
    return {pose.lateral, {hx, hy}};
}

bool fov_contains(const UavPose& pose, const CameraIntrinsics& cam, Vec2 q) {
    double tx = pose.altitude * std::tan(cam.half_angle_x);
    double ty = pose.altitude * std::tan(cam.half_angle_y);
    // Outward normals [1,0], [-1,0], [0,1], [0,-1].
    return (q.x - pose.lateral.x) <= tx && (pose.lateral.x - q.x) <= tx &&
           (q.y - pose.lateral.y) <= ty && (pose.lateral.y - q.y) <= ty;
}

double footprint_at_altitude(double altitude, const CameraIntrinsics& cam) {
    double off = cam.focal_length - altitude;
    return cam.pixel_area / (cam.focal_length * cam.focal_length) * off * off;
}

double pixel_footprint(const UavPose& pose, const CameraIntrinsics& cam, Vec2 q) {
    if (!fov_contains(pose, cam, q)) {
        throw std::domain_error("pixel_footprint: point outside the field of view");
    }
    return footprint_at_altitude(pose.altitude, cam);
}

double clamp_intensity(double intensity, const CameraIntrinsics& cam) {
    return std::clamp(intensity, cam.intensity_min, cam.intensity_max);
}

double importance(double intensity, const CameraIntrinsics& cam) {
    return cam.importance_scale * (cam.intensity_max - clamp_intensity(intensity, cam));
}

double fused_footprint(std::span<const double> footprints, double prior) {
    double inv = 1.0 / prior;
    for (double f : footprints) {
        if (f == 0.0) return 0.0;
        inv += 1.0 / f;
    }
    return 1.0 / inv;
}

std::vector<int> physical_neighbors(std::span<const Vec3> poses, int i, double radius) {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(poses.size()); ++j) {
        if (j == i) continue;
        if (norm(poses[j] - poses[i]) <= radius) out.push_back(j);
    }
    return out;
}

std::vector<int> coverage_neighbors(std::span<const UavPose> poses, int i,
                                    const CameraIntrinsics& cam) {
    Rect mine = fov_rect(poses[i], cam).rect();
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(poses.size()); ++j) {
        if (j == i) continue;
        if (mine.intersects(fov_rect(poses[j], cam).rect())) out.push_back(j);
    }
    return out;
}

bool sensing_neighbor_bound(double altitude_i, double altitude_j, const CameraIntrinsics& cam,
                            double radius) {
    double tx = std::tan(cam.half_angle_x);
    double ty = std::tan(cam.half_angle_y);
    return altitude_i + altitude_j <= radius / std::sqrt(tx * tx + ty * ty);
}

}  // namespace firecover
