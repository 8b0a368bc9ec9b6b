#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "firecover/controller.hpp"
#include "firecover/rng.hpp"

using namespace firecover;

namespace {

ControlGains sane_gains() {
    ControlGains g;
    g.gradient_gain = 1.0;
    g.virtual_step = 1.0;
    g.rendezvous_gain = 0.01;
    g.tracking_gain = 0.05;
    g.repulse_strength = 1.0;
    g.safe_distance = 30.0;
    g.comm_radius = 100.0;
    g.prior_footprint = 0.02;
    return g;
}

using NeighborList = std::vector<std::pair<int, Vec3>>;

// A patch whose only content is one cell, burning or not.
SensedPatch one_cell_patch(bool burning) {
    SensedPatch patch;
    patch.self_id = 0;
    PatchCell cell;
    cell.cell_index = 0;
    cell.center = {0.5, 0.5};
    cell.clamped_intensity = burning ? 50.0 : 5.0;
    cell.burning = burning;
    patch.cells.push_back(cell);
    return patch;
}

}  // namespace

TEST_CASE("gain validation names the offending field") {
    CHECK_NOTHROW(validate(sane_gains()));

    auto expect_reject = [](ControlGains g, const std::string& needle) {
        try {
            validate(g);
            FAIL_CHECK("expected rejection mentioning " << needle);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    ControlGains g = sane_gains();
    g.tracking_gain = 0.0;
    expect_reject(g, "tracking_gain");
    g = sane_gains();
    g.repulse_strength = -1.0;
    expect_reject(g, "repulse_strength");
    g = sane_gains();
    g.prior_footprint = 0.0;
    expect_reject(g, "prior_footprint");
    g = sane_gains();
    g.safe_distance = 100.0;  // == comm_radius
    expect_reject(g, "safe_distance");
}

TEST_CASE("virtual pose descends along the gradient") {
    ControlGains g = sane_gains();
    g.virtual_step = 0.1;
    g.gradient_gain = 1.0;
    UavPose target{{0.0, 0.0}, 10.0};
    UavPose next = update_virtual_pose(target, {1.0, 0.0, 0.0}, g);
    CHECK(next.lateral.x == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(next.lateral.y == 0.0);
    CHECK(next.altitude == 10.0);

    // the two gain factors multiply
    g.virtual_step = 2.0;
    g.gradient_gain = 3.0;
    next = update_virtual_pose(target, {0.0, -1.0, 0.5}, g);
    CHECK(next.lateral.y == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(next.altitude == doctest::Approx(7.0).epsilon(1e-15));

    // zero gradient leaves the target alone
    next = update_virtual_pose(target, {0.0, 0.0, 0.0}, g);
    CHECK(next.lateral.x == 0.0);
    CHECK(next.altitude == 10.0);
}

TEST_CASE("attraction pulls linearly toward the target") {
    Vec3 u = attract({1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 2.0);
    CHECK(u.x == 2.0);
    CHECK(u.y == 0.0);
    CHECK(u.z == 0.0);
    // at the target the pull vanishes
    Vec3 zero = attract({5.0, 5.0, 5.0}, {5.0, 5.0, 5.0}, 3.0);
    CHECK(norm(zero) == 0.0);
}

TEST_CASE("repulsion reproduces the hand-derived magnitude at distance 15") {
    ControlGains g = sane_gains();
    g.repulse_strength = 1.0;
    g.safe_distance = 30.0;
    NeighborList n{{1, Vec3{15.0, 0.0, 0.0}}};
    Vec3 u = repulse({0.0, 0.0, 0.0}, 0, n, g);
    // (1/15 - 1/30) / 15^3 * 15 = 1/6750
    CHECK(std::abs(u.x - (-1.0 / 6750.0)) < 1e-12);
    CHECK(u.y == 0.0);
    CHECK(u.z == 0.0);
    CHECK(norm(u) == doctest::Approx(1.0 / 6750.0).epsilon(1e-12));
}

TEST_CASE("repulsion is exactly zero at or beyond the safe distance") {
    ControlGains g = sane_gains();
    g.repulse_strength = 5e5;
    NeighborList at{{1, Vec3{30.0, 0.0, 0.0}}};
    NeighborList beyond{{1, Vec3{0.0, -31.0, 0.0}}, {2, Vec3{0.0, 0.0, 100.0}}};
    Vec3 u1 = repulse({0.0, 0.0, 0.0}, 0, at, g);
    CHECK(u1.x == 0.0);
    CHECK(u1.y == 0.0);
    CHECK(u1.z == 0.0);
    Vec3 u2 = repulse({0.0, 0.0, 0.0}, 0, beyond, g);
    CHECK(norm(u2) == 0.0);
    // 3-D distance counts: lateral 25 but 3-D 35 stays silent
    NeighborList diag{{1, Vec3{25.0, 0.0, std::sqrt(35.0 * 35.0 - 25.0 * 25.0)}}};
    CHECK(norm(repulse({0.0, 0.0, 0.0}, 0, diag, g)) == 0.0);
}

TEST_CASE("repulsion is antisymmetric over random pairs") {
    ControlGains g = sane_gains();
    g.repulse_strength = 3e5;
    Rng rng(404);
    for (int trial = 0; trial < 10000; ++trial) {
        Vec3 a{rng.uniform(0.0, 40.0), rng.uniform(0.0, 40.0), rng.uniform(0.0, 40.0)};
        Vec3 b{rng.uniform(0.0, 40.0), rng.uniform(0.0, 40.0), rng.uniform(0.0, 40.0)};
        NeighborList nb_of_a{{1, b}};
        NeighborList nb_of_b{{0, a}};
        Vec3 ua = repulse(a, 0, nb_of_a, g);
        Vec3 ub = repulse(b, 1, nb_of_b, g);
        CHECK(std::abs(ua.x + ub.x) < 1e-12 * std::max(1.0, std::abs(ua.x)));
        CHECK(std::abs(ua.y + ub.y) < 1e-12 * std::max(1.0, std::abs(ua.y)));
        CHECK(std::abs(ua.z + ub.z) < 1e-12 * std::max(1.0, std::abs(ua.z)));
    }
}

TEST_CASE("repulsion strengthens monotonically on approach") {
    ControlGains g = sane_gains();
    g.repulse_strength = 1e4;
    double prev = 0.0;
    for (double dist = 29.0; dist >= 1.0; dist -= 1.0) {
        NeighborList n{{1, Vec3{dist, 0.0, 0.0}}};
        double mag = norm(repulse({0.0, 0.0, 0.0}, 0, n, g));
        CHECK(mag > prev);
        prev = mag;
    }
}

TEST_CASE("repulsion pushes outward and sums over neighbors") {
    ControlGains g = sane_gains();
    g.repulse_strength = 1e4;
    NeighborList n{{1, Vec3{10.0, 0.0, 0.0}}, {2, Vec3{-10.0, 0.0, 0.0}}};
    Vec3 u = repulse({0.0, 0.0, 0.0}, 0, n, g);
    // symmetric pair cancels exactly
    CHECK(u.x == 0.0);
    CHECK(u.y == 0.0);
    CHECK(u.z == 0.0);

    NeighborList single{{1, Vec3{0.0, 10.0, 0.0}}};
    Vec3 away = repulse({0.0, 0.0, 0.0}, 0, single, g);
    CHECK(away.y < 0.0);  // pushed away from the neighbor
    CHECK(away.x == 0.0);
}

TEST_CASE("coincident vehicles get a deterministic opposite push") {
    ControlGains g = sane_gains();
    g.repulse_strength = 2.0;
    g.coincidence_eps = 1e-9;
    Vec3 spot{5.0, 5.0, 5.0};
    NeighborList from_three{{1, spot}};
    NeighborList from_one{{3, spot}};
    Vec3 u3 = repulse(spot, 3, from_three, g);
    Vec3 u1 = repulse(spot, 1, from_one, g);
    CHECK(u3.x == 2.0 / (1e-9 * 1e-9));
    CHECK(u1.x == -u3.x);
    CHECK(u3.y == 0.0);
    CHECK(u3.z == 0.0);
}

TEST_CASE("control law gates between rendezvous and virtual-target tracking") {
    ControlGains g = sane_gains();
    NeighborList none;

    UavControlState state;
    state.id = 0;
    state.pose = {{0.0, 0.0}, 0.0};
    state.virtual_target = {{0.0, 0.0}, 0.0};
    state.fire_seen = false;

    // parked at the rendezvous with no fire: nothing to do
    Vec3 at_target = control_law(state, {0.0, 0.0, 0.0}, none, g);
    CHECK(norm(at_target) == 0.0);

    // pure rendezvous attraction: pose - p_r = (10, 0, -60), k_r = 1
    g.rendezvous_gain = 1.0;
    state.pose = {{10.0, 0.0}, 0.0};
    Vec3 u = control_law(state, {0.0, 0.0, 60.0}, none, g);
    CHECK(u.x == -10.0);
    CHECK(u.y == 0.0);
    CHECK(u.z == 60.0);

    // once fire is seen the rendezvous point is irrelevant
    state.fire_seen = true;
    state.virtual_target = {{4.0, 4.0}, 20.0};
    Vec3 a = control_law(state, {0.0, 0.0, 60.0}, none, g);
    Vec3 b = control_law(state, {999.0, -999.0, 0.0}, none, g);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.z == b.z);
    // and the pull tracks the virtual target with the tracking gain
    CHECK(a.x == doctest::Approx(-g.tracking_gain * (10.0 - 4.0)).epsilon(1e-15));
    CHECK(a.z == doctest::Approx(-g.tracking_gain * (0.0 - 20.0)).epsilon(1e-15));

    // repulsion applies in both modes
    NeighborList close{{1, Vec3{11.0, 0.0, 0.0}}};
    Vec3 with_rep = control_law(state, {0.0, 0.0, 60.0}, close, g);
    CHECK(with_rep.x < a.x);  // pushed in -x, away from the neighbor at +x
    CHECK(with_rep.y == a.y);
}

TEST_CASE("zeta reflects fire in view, with optional latching") {
    SensedPatch burning = one_cell_patch(true);
    SensedPatch quiet = one_cell_patch(false);

    CHECK(zeta_update(burning, false, false));
    CHECK(!zeta_update(quiet, false, false));
    // unlatched: drops back to 0 when the fire leaves the view
    CHECK(!zeta_update(quiet, true, false));
    // latched: sticks at 1
    CHECK(zeta_update(quiet, true, true));
    CHECK(zeta_update(burning, true, true));
    CHECK(!zeta_update(quiet, false, true));

    // an empty patch never reports fire
    SensedPatch empty;
    CHECK(!zeta_update(empty, false, false));
}
