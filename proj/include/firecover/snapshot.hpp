#pragma once

#include <iosfwd>
#include <string>

#include "firecover/fire.hpp"

namespace firecover {

// Plain-text matrix: ny rows bottom-up is storage order, so row k holds
// iy = k; nx space-separated values per row, 9 significant digits, LF endings.
void write_intensity_text(const IntensityGrid& grid, std::ostream& out);
void write_intensity_text(const IntensityGrid& grid, const std::string& path);

// Binary 8-bit PGM (P5). Pixel row 0 is the top of the image (iy = ny-1);
// values scale linearly from 0 at zero intensity to 255 at scale_max and clamp
// above it.
void write_intensity_pgm(const IntensityGrid& grid, double scale_max, std::ostream& out);
void write_intensity_pgm(const IntensityGrid& grid, double scale_max, const std::string& path);

}  // namespace firecover
