#include "firecover/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace firecover {

namespace {

template <class Fn>
void to_file(const std::string& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    fn(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_intensity_text(const IntensityGrid& grid, std::ostream& out) {
    char buf[40];
    for (int iy = 0; iy < grid.spec.ny; ++iy) {
        for (int ix = 0; ix < grid.spec.nx; ++ix) {
            std::snprintf(buf, sizeof buf, "%.9g", grid.at(ix, iy));
            if (ix) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

void write_intensity_text(const IntensityGrid& grid, const std::string& path) {
    to_file(path, [&](std::ostream& out) { write_intensity_text(grid, out); });
}

void write_intensity_pgm(const IntensityGrid& grid, double scale_max, std::ostream& out) {
    if (!(scale_max > 0.0)) throw std::invalid_argument("pgm: scale_max must be positive");
    out << "P5\n" << grid.spec.nx << ' ' << grid.spec.ny << "\n255\n";
    for (int iy = grid.spec.ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < grid.spec.nx; ++ix) {
            double v = std::clamp(grid.at(ix, iy) / scale_max, 0.0, 1.0);
            out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
        }
    }
}

void write_intensity_pgm(const IntensityGrid& grid, double scale_max, const std::string& path) {
    to_file(path, [&](std::ostream& out) { write_intensity_pgm(grid, scale_max, out); });
}

}  // namespace firecover
