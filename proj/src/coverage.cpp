#include "firecover/coverage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace firecover {

namespace {

constexpr int kMaxLocal = 64;  // cameras cut into one region at once

struct LocalRects {
    int count = 0;
    std::array<Rect, kMaxLocal> rect;
    std::array<double, kMaxLocal> inv_f;
    std::array<bool, kMaxLocal> zero_f;

    void add(const Rect& r, double footprint) {
        rect[count] = r;
        zero_f[count] = footprint == 0.0;
        inv_f[count] = zero_f[count] ? 0.0 : 1.0 / footprint;
        ++count;
    }
};

// Cut coordinates of local rect boundaries strictly inside (lo, hi) along one
// axis, bracketed by lo and hi themselves. Returns the point count.
int cut_axis(double lo, double hi, const LocalRects& L, bool x_axis,
             std::array<double, 2 * kMaxLocal + 2>& out) {
    int n = 0;
    out[n++] = lo;
    for (int j = 0; j < L.count; ++j) {
        double a = x_axis ? L.rect[j].lo.x : L.rect[j].lo.y;
        double b = x_axis ? L.rect[j].hi.x : L.rect[j].hi.y;
        if (a > lo && a < hi) out[n++] = a;
        if (b > lo && b < hi) out[n++] = b;
    }
    out[n++] = hi;
    std::sort(out.begin() + 1, out.begin() + n - 1);
    return n;
}

// Enumerates the sub-rectangles of `region` on which coverage membership is
// constant and hands (area, membership bitmask over L) to fn.
template <class F>
void for_each_subregion(const Rect& region, const LocalRects& L, F&& fn) {
    std::array<double, 2 * kMaxLocal + 2> xs, ys;
    int ncx = cut_axis(region.lo.x, region.hi.x, L, true, xs);
    int ncy = cut_axis(region.lo.y, region.hi.y, L, false, ys);
    for (int a = 0; a + 1 < ncx; ++a) {
        double x0 = xs[a], x1 = xs[a + 1];
        if (x1 <= x0) continue;
        double mx = 0.5 * (x0 + x1);
        for (int b = 0; b + 1 < ncy; ++b) {
            double y0 = ys[b], y1 = ys[b + 1];
            if (y1 <= y0) continue;
            Vec2 mid{mx, 0.5 * (y0 + y1)};
            std::uint64_t mask = 0;
            for (int j = 0; j < L.count; ++j) {
                if (L.rect[j].contains(mid)) mask |= std::uint64_t{1} << j;
            }
            fn((x1 - x0) * (y1 - y0), mask);
        }
    }
}

double fused_of_mask(const LocalRects& L, std::uint64_t mask, double inv_prior) {
    double inv = inv_prior;
    for (int j = 0; j < L.count; ++j) {
        if (mask >> j & 1) {
            if (L.zero_f[j]) return 0.0;
            inv += L.inv_f[j];
        }
    }
    return 1.0 / inv;
}

struct CellRange {
    int x0 = 0, x1 = -1, y0 = 0, y1 = -1;  // empty when x1 < x0
};

// Grid cells a rectangle touches, empty when it misses the world entirely.
CellRange cells_touching(const GridSpec& g, const Rect& r) {
    Rect world = g.world();
    if (!world.intersects(r)) return {};
    CellRange out;
    out.x0 = g.cell_x(std::max(r.lo.x, world.lo.x));
    out.x1 = g.cell_x(std::min(r.hi.x, world.hi.x));
    out.y0 = g.cell_y(std::max(r.lo.y, world.lo.y));
    out.y1 = g.cell_y(std::min(r.hi.y, world.hi.y));
    return out;
}

Rect rect_intersection(const Rect& a, const Rect& b) {
    return {{std::max(a.lo.x, b.lo.x), std::max(a.lo.y, b.lo.y)},
            {std::min(a.hi.x, b.hi.x), std::min(a.hi.y, b.hi.y)}};
}

}  // namespace

SensedPatch build_patch(int self, std::span<const UavPose> poses, const CameraIntrinsics& cam,
                        const IntensityGrid& grid, const std::vector<std::uint8_t>& burning) {
    SensedPatch patch;
    patch.self_id = self;
    patch.self_pose = poses[self];
    patch.self_fov = fov_rect(poses[self], cam).rect();
    patch.self_footprint = footprint_at_altitude(poses[self].altitude, cam);
    patch.grid = &grid;
    patch.burning = &burning;

    for (int j : coverage_neighbors(poses, self, cam)) {
        patch.neighbors.push_back({j, poses[j], fov_rect(poses[j], cam).rect(),
                                   footprint_at_altitude(poses[j].altitude, cam)});
    }

    const GridSpec& g = grid.spec;
    CellRange range = cells_touching(g, patch.self_fov);
    for (int iy = range.y0; iy <= range.y1; ++iy) {
        for (int ix = range.x0; ix <= range.x1; ++ix) {
            Vec2 center = g.center(ix, iy);
            if (!patch.self_fov.contains(center)) continue;
            int idx = g.index(ix, iy);
            PatchCell cell;
            cell.cell_index = idx;
            cell.center = center;
            cell.clamped_intensity = clamp_intensity(grid.cells[idx], cam);
            cell.burning = burning[idx] != 0;
            cell.coverers_begin = static_cast<std::uint32_t>(patch.coverers.size());
            patch.coverers.push_back({self, patch.self_footprint});
            for (const PatchNeighbor& nb : patch.neighbors) {
                if (nb.fov.contains(center)) patch.coverers.push_back({nb.id, nb.footprint});
            }
            cell.coverers_end = static_cast<std::uint32_t>(patch.coverers.size());
            patch.cells.push_back(cell);
        }
    }
    return patch;
}

bool patch_sees_fire(const SensedPatch& patch) {
    for (const PatchCell& c : patch.cells) {
        if (c.burning) return true;
    }
    return false;
}

double objective_value(std::span<const UavPose> poses, const CameraIntrinsics& cam,
                       const IntensityGrid& grid, const std::vector<std::uint8_t>& burning,
                       double prior) {
    const GridSpec& g = grid.spec;
    const int n = static_cast<int>(poses.size());
    std::vector<Rect> rects(n);
    std::vector<double> footprints(n);
    for (int j = 0; j < n; ++j) {
        rects[j] = fov_rect(poses[j], cam).rect();
        footprints[j] = footprint_at_altitude(poses[j].altitude, cam);
    }
    const double inv_prior = 1.0 / prior;

    double total = 0.0;
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            int idx = g.index(ix, iy);
            if (!burning[idx]) continue;
            double d_intensity = cam.intensity_max - clamp_intensity(grid.cells[idx], cam);
            if (d_intensity <= 0.0) continue;
            Rect cell = g.cell_rect(ix, iy);

            LocalRects L;
            bool whole_cell = true;  // no local boundary crosses the cell
            for (int j = 0; j < n; ++j) {
                if (!rects[j].intersects(cell)) continue;
                L.add(rects[j], footprints[j]);
                whole_cell = whole_cell && rects[j].lo.x <= cell.lo.x &&
                             rects[j].hi.x >= cell.hi.x && rects[j].lo.y <= cell.lo.y &&
                             rects[j].hi.y >= cell.hi.y;
            }
            double cell_area = g.cell * g.cell;
            if (whole_cell) {
                std::uint64_t all = L.count == 0 ? 0 : (~std::uint64_t{0} >> (64 - L.count));
                total += cell_area * fused_of_mask(L, all, inv_prior) * d_intensity;
            } else {
                for_each_subregion(cell, L, [&](double area, std::uint64_t mask) {
                    total += area * fused_of_mask(L, mask, inv_prior) * d_intensity;
                });
            }
        }
    }
    return cam.importance_scale * total;
}

namespace {

struct EdgeSpec {
    bool vertical;    // true: x fixed, integrate over y
    double fixed;
    double span_lo;
    double span_hi;
    double normal;    // outward normal component along the fixed axis
    double tan_half;  // d(half-extent)/dz for this edge pair
};

std::array<EdgeSpec, 4> fov_edges(const Rect& r, const CameraIntrinsics& cam) {
    double tx = std::tan(cam.half_angle_x);
    double ty = std::tan(cam.half_angle_y);
    return {{{true, r.hi.x, r.lo.y, r.hi.y, +1.0, tx},
             {true, r.lo.x, r.lo.y, r.hi.y, -1.0, tx},
             {false, r.hi.y, r.lo.x, r.hi.x, +1.0, ty},
             {false, r.lo.y, r.lo.x, r.hi.x, -1.0, ty}}};
}

// (h_with_self - h_without_self) at a point, membership over the neighbors.
double transport_gap(const SensedPatch& patch, Vec2 q, double inv_prior, double inv_self) {
    double inv_others = inv_prior;
    for (const PatchNeighbor& nb : patch.neighbors) {
        if (!nb.fov.contains(q)) continue;
        if (nb.footprint == 0.0) return 0.0;  // perfect-resolution region, nothing to gain
        inv_others += 1.0 / nb.footprint;
    }
    return 1.0 / (inv_others + inv_self) - 1.0 / inv_others;
}

// Burning-cell weight at a point; zero for anything outside the grid.
double burn_weight(const SensedPatch& patch, const CameraIntrinsics& cam, Vec2 q) {
    const GridSpec& g = patch.grid->spec;
    if (!g.covers(q)) return 0.0;
    int idx = g.index(g.cell_x(q.x), g.cell_y(q.y));
    if (!(*patch.burning)[idx]) return 0.0;
    return cam.intensity_max - clamp_intensity(patch.grid->cells[idx], cam);
}

Vec3 gradient_exact(const SensedPatch& patch, const CameraIntrinsics& cam, double prior,
                    double inv_self) {
    const GridSpec& g = patch.grid->spec;
    const Rect world = g.world();
    const double inv_prior = 1.0 / prior;

    double lateral_x = 0.0, lateral_y = 0.0, altitude_edges = 0.0;
    for (const EdgeSpec& e : fov_edges(patch.self_fov, cam)) {
        double lo = e.span_lo, hi = e.span_hi;
        if (e.vertical) {
            if (e.fixed < world.lo.x || e.fixed > world.hi.x) continue;
            lo = std::max(lo, world.lo.y);
            hi = std::min(hi, world.hi.y);
        } else {
            if (e.fixed < world.lo.y || e.fixed > world.hi.y) continue;
            lo = std::max(lo, world.lo.x);
            hi = std::min(hi, world.hi.x);
        }
        if (hi <= lo) continue;

        // Breakpoints: grid lines plus neighbor boundaries that cross the edge.
        std::vector<double> bp{lo, hi};
        double axis_origin = e.vertical ? g.origin.y : g.origin.x;
        int k0 = static_cast<int>(std::ceil((lo - axis_origin) / g.cell));
        int k1 = static_cast<int>(std::floor((hi - axis_origin) / g.cell));
        for (int k = k0; k <= k1; ++k) {
            double v = axis_origin + k * g.cell;
            if (v > lo && v < hi) bp.push_back(v);
        }
        for (const PatchNeighbor& nb : patch.neighbors) {
            double cross_lo = e.vertical ? nb.fov.lo.x : nb.fov.lo.y;
            double cross_hi = e.vertical ? nb.fov.hi.x : nb.fov.hi.y;
            if (e.fixed < cross_lo || e.fixed > cross_hi) continue;
            double a = e.vertical ? nb.fov.lo.y : nb.fov.lo.x;
            double b = e.vertical ? nb.fov.hi.y : nb.fov.hi.x;
            if (a > lo && a < hi) bp.push_back(a);
            if (b > lo && b < hi) bp.push_back(b);
        }
        std::sort(bp.begin(), bp.end());

        double integral = 0.0;
        for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
            double len = bp[s + 1] - bp[s];
            if (len <= 0.0) continue;
            double mid = 0.5 * (bp[s] + bp[s + 1]);
            Vec2 q = e.vertical ? Vec2{e.fixed, mid} : Vec2{mid, e.fixed};
            double weight = burn_weight(patch, cam, q);
            if (weight == 0.0) continue;
            integral += transport_gap(patch, q, inv_prior, inv_self) * weight * len;
        }
        if (e.vertical) {
            lateral_x += e.normal * integral;
        } else {
            lateral_y += e.normal * integral;
        }
        altitude_edges += e.tan_half * integral;
    }

    // Interior resolution integral: h^2 over burning overlap with the FOV.
    double interior = 0.0;
    CellRange range = cells_touching(g, patch.self_fov);
    for (int iy = range.y0; iy <= range.y1; ++iy) {
        for (int ix = range.x0; ix <= range.x1; ++ix) {
            int idx = g.index(ix, iy);
            if (!(*patch.burning)[idx]) continue;
            double d_intensity = cam.intensity_max - clamp_intensity(patch.grid->cells[idx], cam);
            if (d_intensity <= 0.0) continue;
            Rect overlap = rect_intersection(g.cell_rect(ix, iy), patch.self_fov);
            if (overlap.hi.x <= overlap.lo.x || overlap.hi.y <= overlap.lo.y) continue;

            LocalRects L;  // neighbors only; every point of overlap already sees self
            for (const PatchNeighbor& nb : patch.neighbors) {
                if (nb.fov.intersects(overlap)) L.add(nb.fov, nb.footprint);
            }
            for_each_subregion(overlap, L, [&](double area, std::uint64_t mask) {
                double inv = inv_prior + inv_self;
                bool zero = false;
                for (int j = 0; j < L.count; ++j) {
                    if (mask >> j & 1) {
                        if (L.zero_f[j]) { zero = true; break; }
                        inv += L.inv_f[j];
                    }
                }
                if (zero) return;
                double h = 1.0 / inv;
                interior += area * h * h * d_intensity;
            });
        }
    }

    double s1_over_b2 = cam.pixel_area / (cam.focal_length * cam.focal_length);
    double off = cam.focal_length - patch.self_pose.altitude;
    double altitude = altitude_edges - 2.0 * interior / (s1_over_b2 * off * off * off);
    return cam.importance_scale * Vec3{lateral_x, lateral_y, altitude};
}

Vec3 gradient_sampled(const SensedPatch& patch, const CameraIntrinsics& cam, double prior,
                      double inv_self, int edge_samples) {
    const GridSpec& g = patch.grid->spec;
    const double inv_prior = 1.0 / prior;

    double lateral_x = 0.0, lateral_y = 0.0, altitude_edges = 0.0;
    for (const EdgeSpec& e : fov_edges(patch.self_fov, cam)) {
        double length = e.span_hi - e.span_lo;
        if (length <= 0.0) continue;
        double dl = length / edge_samples;
        double integral = 0.0;
        for (int s = 0; s < edge_samples; ++s) {
            double t = e.span_lo + (s + 0.5) * dl;
            Vec2 q = e.vertical ? Vec2{e.fixed, t} : Vec2{t, e.fixed};
            double weight = burn_weight(patch, cam, q);
            if (weight == 0.0) continue;
            integral += transport_gap(patch, q, inv_prior, inv_self) * weight * dl;
        }
        if (e.vertical) {
            lateral_x += e.normal * integral;
        } else {
            lateral_y += e.normal * integral;
        }
        altitude_edges += e.tan_half * integral;
    }

    double interior = 0.0;
    double cell_area = g.cell * g.cell;
    for (const PatchCell& cell : patch.cells) {
        if (!cell.burning) continue;
        double d_intensity = cam.intensity_max - cell.clamped_intensity;
        if (d_intensity <= 0.0) continue;
        double inv = inv_prior;
        bool zero = false;
        for (std::uint32_t k = cell.coverers_begin; k < cell.coverers_end; ++k) {
            double f = patch.coverers[k].footprint;
            if (f == 0.0) { zero = true; break; }
            inv += 1.0 / f;
        }
        if (zero) continue;
        double h = 1.0 / inv;
        interior += cell_area * h * h * d_intensity;
    }

    double s1_over_b2 = cam.pixel_area / (cam.focal_length * cam.focal_length);
    double off = cam.focal_length - patch.self_pose.altitude;
    double altitude = altitude_edges - 2.0 * interior / (s1_over_b2 * off * off * off);
    return cam.importance_scale * Vec3{lateral_x, lateral_y, altitude};
}

}  // namespace

Vec3 coverage_gradient(const SensedPatch& patch, const CameraIntrinsics& cam, double prior,
                       const GradientOptions& opts) {
    if (std::abs(cam.focal_length - patch.self_pose.altitude) < opts.altitude_guard) {
        throw std::domain_error("coverage_gradient: altitude within guard band of the focal length");
    }
    double inv_self = 1.0 / patch.self_footprint;
    if (opts.quadrature == GradientQuadrature::exact) {
        return gradient_exact(patch, cam, prior, inv_self);
    }
    return gradient_sampled(patch, cam, prior, inv_self, opts.edge_samples);
}

}  // namespace firecover
