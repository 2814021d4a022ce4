#pragma once

#include <string>

#include "duet/color_frequency.hpp"

namespace duet {

// Binary PPM (P6, 8-bit) reader/writer. Comments in the header are accepted;
// only maxval 255 is supported.
ImageRGB read_ppm(const std::string& path);
void write_ppm(const std::string& path, const ImageRGB& img);

} // namespace duet
