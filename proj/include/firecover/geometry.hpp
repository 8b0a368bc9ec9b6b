#pragma once

#include <algorithm>
#include <cmath>

namespace firecover {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a = a + b; return a; }
inline double norm(Vec3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

// Closed axis-aligned rectangle.
struct Rect {
    Vec2 lo;
    Vec2 hi;

    bool contains(Vec2 q) const {
        return q.x >= lo.x && q.x <= hi.x && q.y >= lo.y && q.y <= hi.y;
    }
    bool intersects(const Rect& o) const {
        return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y;
    }
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
};

inline Vec2 clamp_to(const Rect& r, Vec2 q) {
    return {std::clamp(q.x, r.lo.x, r.hi.x), std::clamp(q.y, r.lo.y, r.hi.y)};
}

// Uniform square grid over a world rectangle. Cell (ix, iy) spans
// [origin + ix*cell, origin + (ix+1)*cell) x [...]; centers sit at half-cell offsets.
struct GridSpec {
    Vec2 origin{0.0, 0.0};
    double cell = 1.0;
    int nx = 0;
    int ny = 0;

    int cell_count() const { return nx * ny; }
    Rect world() const {
        return {origin, {origin.x + cell * nx, origin.y + cell * ny}};
    }
    Vec2 center(int ix, int iy) const {
        return {origin.x + (ix + 0.5) * cell, origin.y + (iy + 0.5) * cell};
    }
    Rect cell_rect(int ix, int iy) const {
        Vec2 lo{origin.x + ix * cell, origin.y + iy * cell};
        return {lo, {lo.x + cell, lo.y + cell}};
    }
    int index(int ix, int iy) const { return iy * nx + ix; }
    bool in_bounds(int ix, int iy) const { return ix >= 0 && ix < nx && iy >= 0 && iy < ny; }
    // Cell coordinate of a point; points on the far boundary map to the last cell.
    int cell_x(double x) const {
        return std::clamp(static_cast<int>(std::floor((x - origin.x) / cell)), 0, nx - 1);
    }
    int cell_y(double y) const {
        return std::clamp(static_cast<int>(std::floor((y - origin.y) / cell)), 0, ny - 1);
    }
    bool covers(Vec2 q) const { return world().contains(q); }
};

}  // namespace firecover
