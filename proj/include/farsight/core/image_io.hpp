#pragma once

#include <filesystem>

#include "farsight/core/types.hpp"

namespace farsight {

// Reads 8/16-bit grayscale or RGB PNG, PGM, PPM. Integer samples are divided
// by the format's maximum value, so data comes back in [0,1].
ImageFrame read_image(const std::filesystem::path& path);

// Writes PNG (by .png extension) or PGM/PPM (.pgm/.ppm). Samples are scaled
// to the integer range and rounded to nearest.
void write_image(const ImageFrame& frame, const std::filesystem::path& path,
                 int bit_depth = 8);

}  // namespace farsight
