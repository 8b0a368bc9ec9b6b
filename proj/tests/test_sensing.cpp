#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "firecover/rng.hpp"
#include "firecover/sensing.hpp"

using namespace firecover;

namespace {

CameraIntrinsics paper_camera() {
    CameraIntrinsics cam;
    cam.pixel_area = 1e-4;
    cam.focal_length = 10.0;
    cam.half_angle_x = 30.0 * std::numbers::pi / 180.0;
    cam.half_angle_y = 45.0 * std::numbers::pi / 180.0;
    cam.intensity_min = 5.0;
    cam.intensity_max = 100.0;
    cam.importance_scale = 1e-3;
    return cam;
}

}  // namespace

TEST_CASE("fov rectangle has half-extents z tan(theta)") {
    CameraIntrinsics cam = paper_camera();
    UavPose pose{{500.0, 400.0}, 60.0};
    FovRect fov = fov_rect(pose, cam);
    CHECK(fov.center.x == 500.0);
    CHECK(fov.center.y == 400.0);
    CHECK(fov.half_extents.x == doctest::Approx(34.64101615137754).epsilon(1e-13));
    CHECK(fov.half_extents.y == doctest::Approx(60.0).epsilon(1e-13));

    Rect r = fov.rect();
    CHECK(r.lo.x == doctest::Approx(500.0 - 34.64101615137754).epsilon(1e-13));
    CHECK(r.hi.y == doctest::Approx(460.0).epsilon(1e-13));

    // on the ground the rectangle collapses to the point under the camera
    Rect ground = fov_rect({{3.0, 4.0}, 0.0}, cam).rect();
    CHECK(ground.lo.x == 3.0);
    CHECK(ground.hi.x == 3.0);
    CHECK(ground.contains({3.0, 4.0}));
}

TEST_CASE("edge-by-edge membership agrees with the rectangle") {
    CameraIntrinsics cam = paper_camera();
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        UavPose pose{{rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0)}, rng.uniform(0.0, 80.0)};
        Vec2 q{rng.uniform(-120.0, 120.0), rng.uniform(-120.0, 120.0)};
        CHECK(fov_contains(pose, cam, q) == fov_rect(pose, cam).rect().contains(q));
    }
}

TEST_CASE("fov membership includes the boundary") {
    CameraIntrinsics cam = paper_camera();
    // centered at the origin so the boundary offsets survive the subtraction
    // q - c without rounding
    UavPose pose{{0.0, 0.0}, 60.0};
    double hx = 60.0 * std::tan(cam.half_angle_x);
    double hy = 60.0 * std::tan(cam.half_angle_y);
    CHECK(fov_contains(pose, cam, {hx, 0.0}));
    CHECK(fov_contains(pose, cam, {-hx, 0.0}));
    CHECK(fov_contains(pose, cam, {0.0, hy}));
    CHECK(fov_contains(pose, cam, {hx, hy}));  // corner
    CHECK(!fov_contains(pose, cam, {hx + 1e-9, 0.0}));
}

TEST_CASE("pixel footprint is constant over the field of view") {
    CameraIntrinsics cam = paper_camera();
    UavPose pose{{0.0, 0.0}, 60.0};
    // S1/b^2 (b - z)^2 with the reference numbers = 1e-6 * 2500
    CHECK(pixel_footprint(pose, cam, {0.0, 0.0}) == doctest::Approx(2.5e-3).epsilon(1e-14));
    CHECK(pixel_footprint(pose, cam, {20.0, -50.0}) ==
          pixel_footprint(pose, cam, {0.0, 0.0}));
    CHECK_THROWS_AS((void)pixel_footprint(pose, cam, {200.0, 0.0}), std::domain_error);
}

TEST_CASE("footprint shrinks as the camera descends toward the focal length") {
    CameraIntrinsics cam = paper_camera();
    CHECK(footprint_at_altitude(0.0, cam) == doctest::Approx(1e-4).epsilon(1e-15));
    CHECK(footprint_at_altitude(10.0, cam) == 0.0);  // at the focal length
    double prev = footprint_at_altitude(0.0, cam);
    for (double z = 1.0; z < 10.0; z += 1.0) {
        double f = footprint_at_altitude(z, cam);
        CHECK(f < prev);
        prev = f;
    }
    // symmetric above the focal length, growing again
    CHECK(footprint_at_altitude(60.0, cam) == doctest::Approx(2.5e-3).epsilon(1e-14));
    CHECK(footprint_at_altitude(20.0, cam) == doctest::Approx(footprint_at_altitude(0.0, cam)));
}

TEST_CASE("intensity clamps into the sensed range") {
    CameraIntrinsics cam = paper_camera();
    CHECK(clamp_intensity(3.0, cam) == 5.0);
    CHECK(clamp_intensity(150.0, cam) == 100.0);
    CHECK(clamp_intensity(42.0, cam) == 42.0);
    CHECK(clamp_intensity(5.0, cam) == 5.0);
    CHECK(clamp_intensity(100.0, cam) == 100.0);
}

TEST_CASE("importance weights unexplored fire highest and saturation zero") {
    CameraIntrinsics cam = paper_camera();
    CHECK(importance(5.0, cam) == doctest::Approx(0.095).epsilon(1e-15));
    CHECK(importance(0.0, cam) == doctest::Approx(0.095).epsilon(1e-15));  // clamped up
    CHECK(importance(100.0, cam) == 0.0);
    CHECK(importance(500.0, cam) == 0.0);
    CHECK(importance(50.0, cam) == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("fused footprint is the harmonic combination with the prior") {
    std::vector<double> two{2.0, 2.0};
    CHECK(fused_footprint(two, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    std::vector<double> none;
    CHECK(fused_footprint(none, 0.02) == doctest::Approx(0.02).epsilon(1e-15));

    std::vector<double> with_zero{1.0, 0.0, 5.0};
    CHECK(fused_footprint(with_zero, 2.0) == 0.0);

    // each added camera can only shrink the fused value
    std::vector<double> acc;
    double prev = fused_footprint(acc, 0.02);
    for (double f : {5e-3, 1e-2, 2.5e-3}) {
        acc.push_back(f);
        double h = fused_footprint(acc, 0.02);
        CHECK(h < prev);
        prev = h;
    }
}

TEST_CASE("physical neighborhood is symmetric and includes the boundary") {
    std::vector<Vec3> poses{{0.0, 0.0, 0.0}, {3.0, 4.0, 0.0}, {100.0, 0.0, 0.0}};
    std::vector<int> n0 = physical_neighbors(poses, 0, 5.0);
    CHECK(n0 == std::vector<int>{1});  // 3-4-5 triangle, exactly on the sphere
    std::vector<int> n1 = physical_neighbors(poses, 1, 5.0);
    CHECK(n1 == std::vector<int>{0});
    CHECK(physical_neighbors(poses, 2, 5.0).empty());

    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec3> p;
        for (int i = 0; i < 8; ++i) {
            p.push_back({rng.uniform(0.0, 60.0), rng.uniform(0.0, 60.0), rng.uniform(0.0, 30.0)});
        }
        for (int i = 0; i < 8; ++i) {
            for (int j : physical_neighbors(p, i, 25.0)) {
                std::vector<int> back = physical_neighbors(p, j, 25.0);
                CHECK(std::find(back.begin(), back.end(), i) != back.end());
            }
        }
    }
}

TEST_CASE("coverage neighbors are cameras with intersecting ground rectangles") {
    CameraIntrinsics cam = paper_camera();
    // half-extents at z=60: 34.64 x hy (hy just under 60 in floating point);
    // 2*hy and 2*hy - hy are exact, so pose 3 touches pose 0 edge to edge
    double hy = 60.0 * std::tan(cam.half_angle_y);
    std::vector<UavPose> poses{
        {{0.0, 0.0}, 60.0},
        {{60.0, 0.0}, 60.0},           // overlaps 0 in x (gap 60 < 69.3)
        {{0.0, 2.0 * hy + 0.01}, 60.0},  // just misses 0 in y
        {{0.0, 2.0 * hy}, 60.0},         // exactly touching edge counts
    };
    std::vector<int> n0 = coverage_neighbors(poses, 0, cam);
    CHECK(n0 == std::vector<int>{1, 3});
    std::vector<int> n2 = coverage_neighbors(poses, 2, cam);
    CHECK(n2 == std::vector<int>{3});

    // symmetry over random constellations
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<UavPose> p;
        for (int i = 0; i < 6; ++i) {
            p.push_back({{rng.uniform(0.0, 300.0), rng.uniform(0.0, 300.0)},
                         rng.uniform(1.0, 80.0)});
        }
        for (int i = 0; i < 6; ++i) {
            for (int j : coverage_neighbors(p, i, cam)) {
                std::vector<int> back = coverage_neighbors(p, j, cam);
                CHECK(std::find(back.begin(), back.end(), i) != back.end());
            }
        }
    }
}

TEST_CASE("altitude-sum bound for guaranteed communication of overlapping views") {
    CameraIntrinsics cam = paper_camera();
    // r / sqrt(tan^2 30 + tan^2 45) = 100 / sqrt(4/3) = 86.60254037844388
    const double bound = 86.60254037844388;
    CHECK(sensing_neighbor_bound(bound / 2, bound / 2, cam, 100.0));
    CHECK(sensing_neighbor_bound(40.0, 40.0, cam, 100.0));
    CHECK(!sensing_neighbor_bound(44.0, 44.0, cam, 100.0));
    CHECK(!sensing_neighbor_bound(bound / 2 + 0.01, bound / 2, cam, 100.0));
}
