#pragma once

#include "sonarsim/sonogram.hpp"

#include <string>

// File formats, documented in docs/file_formats.md:
//  - .sf sonar frames: fixed little-endian header + row-major float32
//    intensities;
//  - portable graymap (P5) exports, 8- or 16-bit.

namespace sonarsim {

void save_frame(const SonarFrame& frame, const std::string& path);

/// Reads a .sf file. Bearings are not stored; they are reconstructed as
/// uniformly spaced slot centers across the stored field of view.
SonarFrame load_frame(const std::string& path);

/// Writes intensities in [0, 1] as a binary PGM; bit_depth is 8 or 16.
void save_pgm(const std::vector<float>& pixels, int width, int height,
              const std::string& path, int bit_depth = 8);

inline void save_pgm(const AcousticImage& image, const std::string& path,
                     int bit_depth = 8) {
    save_pgm(image.pixels, image.width, image.height, path, bit_depth);
}

}  // namespace sonarsim
