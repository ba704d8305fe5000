#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace darkfield {

/// Decoded grayscale raster, row 0 first.
struct Raster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::uint32_t maxval = 0;
  std::vector<std::uint16_t> pixels;
};

/// Reads binary PGM (P5, maxval <= 65535) or grayscale PNG (8/16 bit, alpha
/// ignored). Format is chosen by file signature. Throws RasterError.
Raster read_raster(const std::filesystem::path& path);

/// Writes a 16-bit binary PGM. Throws IoError.
void write_pgm16(const std::filesystem::path& path, std::size_t width, std::size_t height,
                 const std::vector<std::uint16_t>& pixels);

}  // namespace darkfield
