#pragma once

#include <string>

#include "terralign/raster.hpp"

namespace terralign {

// Reads an 8-bit grayscale or RGB PNG (palette images are expanded to RGB).
// Other bit depths and alpha channels are rejected.
RasterU8 read_png(const std::string& path);

// Writes an 8-bit raster with 1 or 3 channels.
void write_png(const std::string& path, const RasterU8& image);

}  // namespace terralign
