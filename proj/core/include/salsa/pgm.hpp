#pragma once

#include "salsa/grid.hpp"

#include <filesystem>

namespace salsa {

// Reads a binary (P5) PGM. 8-bit and 16-bit (big-endian) samples are accepted;
// intensities are returned unscaled, i.e. in [0, maxval].
Image read_pgm(const std::filesystem::path& path);

// Writes an 8-bit P5 PGM, clamping to [0, 255] and rounding.
void write_pgm8(const std::filesystem::path& path, const Image& image);

// Intensity range recorded next to a 16-bit PGM.
struct PgmRange {
  double min = 0.0;
  double max = 0.0;
};

// Writes a 16-bit P5 PGM with intensities mapped linearly from [min, max] of
// the image onto [0, 65535], plus a sidecar "<path>.range" holding min and max
// (one float per line). Returns the recorded range.
PgmRange write_pgm16(const std::filesystem::path& path, const Image& image);

// Inverse of write_pgm16 up to quantization, using the sidecar.
Image read_pgm16_scaled(const std::filesystem::path& path);

std::filesystem::path range_sidecar_path(const std::filesystem::path& pgm_path);

// Full-precision little-endian float64 dump, row-major, no header.
void write_f64(const std::filesystem::path& path, const Image& image);
Image read_f64(const std::filesystem::path& path, Index height, Index width);

}  // namespace salsa
